#include "dimred/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "dimred/errors.hpp"
#include "dimred/format.hpp"

namespace dimred::io {
namespace {

using nlohmann::json;

std::string iso8601_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void maybe_stamp(json& j, const ReportOptions& options) {
  if (options.timestamp) j["generated_at"] = iso8601_now();
}

void dump_to(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write failed for " + path.string());
}

json load_json(const std::filesystem::path& path, const char* what) {
  std::ifstream in(path);
  if (!in) {
    throw IoError(std::string(what) + ": cannot open " + path.string());
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": bad JSON in " + path.string() +
                     ": " + e.what());
  }
}

json rational_matrix_json(const ratlin::Matrix& a) {
  json rows = json::array();
  for (int r = 0; r < a.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < a.cols(); ++c) {
      row.push_back(ratlin::format_rational(a(r, c)));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// 16-step color ramp (dark violet to yellow-green), applied to f by uniform
// bucketing of [min, max].
constexpr const char* kRamp[16] = {
    "#440154", "#481567", "#482677", "#453781", "#404788", "#39568c",
    "#33638d", "#2d708e", "#287d8e", "#238a8d", "#1f968b", "#20a387",
    "#29af7f", "#3cbb75", "#55c667", "#95d840"};

struct AxisMap {
  double lo = 0.0, hi = 1.0;
  double pix_lo = 0.0, pix_hi = 1.0;

  double operator()(double v) const {
    if (hi == lo) return 0.5 * (pix_lo + pix_hi);
    return pix_lo + (v - lo) / (hi - lo) * (pix_hi - pix_lo);
  }
};

std::string svg_num(double v) {
  // Two decimals are plenty for pixel coordinates and keep files small.
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

}  // namespace

units::QuantitySystem load_quantity_system(const std::filesystem::path& path) {
  const json j = load_json(path, "quantity system");
  units::QuantitySystem system;
  try {
    for (const auto& input : j.at("inputs")) {
      units::QuantitySpec spec;
      spec.name = input.at("name").get<std::string>();
      spec.dimension =
          units::parse_unit_expression(input.at("units").get<std::string>());
      system.inputs.push_back(std::move(spec));
    }
    system.output.name = j.at("output").at("name").get<std::string>();
    system.output.dimension = units::parse_unit_expression(
        j.at("output").at("units").get<std::string>());
  } catch (const json::exception& e) {
    throw ParseError("quantity system: missing field in " + path.string() +
                     ": " + e.what());
  }
  return system;
}

SpaceFile load_parameter_space(const std::filesystem::path& path) {
  const json j = load_json(path, "parameter space");
  std::vector<models::ParamRange> params;
  std::map<std::string, double> constants;
  std::string model = "external";
  try {
    for (const auto& p : j.at("params")) {
      params.push_back({p.at("name").get<std::string>(),
                        p.at("low").get<double>(),
                        p.at("high").get<double>()});
    }
    if (j.contains("constants")) {
      for (const auto& [key, value] : j.at("constants").items()) {
        constants[key] = value.get<double>();
      }
    }
    if (j.contains("model")) model = j.at("model").get<std::string>();
  } catch (const json::exception& e) {
    throw ParseError("parameter space: missing field in " + path.string() +
                     ": " + e.what());
  }
  return {models::ParameterSpace(params, constants), model};
}

void write_pi_report(const std::filesystem::path& path,
                     const units::PiGroupSet& pi,
                     const std::optional<units::VerifyReport>& verify,
                     const ReportOptions& options) {
  json j;
  maybe_stamp(j, options);
  j["base_units"] = pi.dm.base_units;
  j["inputs"] = pi.dm.input_names;
  j["output"] = pi.dm.output_name;
  j["n"] = pi.n();
  j["D"] = rational_matrix_json(pi.dm.D);
  json u = json::array();
  for (const auto& e : pi.dm.u) u.push_back(ratlin::format_rational(e));
  j["u"] = u;
  json v = json::array();
  for (const auto& e : pi.v) v.push_back(ratlin::format_rational(e));
  j["v"] = v;
  j["U"] = rational_matrix_json(pi.U);
  j["groups"] = pi.rendered_groups;
  if (verify) {
    j["verify"] = {{"dv_ok", verify->dv_ok},
                   {"du_ok", verify->du_ok},
                   {"rank_ok", verify->rank_ok},
                   {"failures", verify->failures}};
  }
  dump_to(path, j);
}

std::string pi_report_text(const units::PiGroupSet& pi) {
  std::ostringstream out;
  out << "inputs: " << pi.dm.m() << ", base units: " << pi.dm.k() << " (";
  for (size_t i = 0; i < pi.dm.base_units.size(); ++i) {
    if (i) out << ", ";
    out << pi.dm.base_units[i];
  }
  out << "), unitless groups: " << pi.n() << "\n";
  out << "output group:\n  Pi = " << pi.rendered_groups[0] << "\n";
  if (pi.n() > 0) out << "input groups:\n";
  for (int g = 1; g <= pi.n(); ++g) {
    out << "  Pi_" << g << " = " << pi.rendered_groups[static_cast<size_t>(g)]
        << "\n";
  }
  return out.str();
}

void write_spectrum_report(const std::filesystem::path& path,
                           const SpectrumReportInputs& inputs,
                           const ReportOptions& options) {
  if (inputs.spectrum == nullptr) {
    throw ArgumentError("spectrum report: spectrum is required");
  }
  const subspace::Spectrum& spec = *inputs.spectrum;
  const int m = spec.m();
  json j;
  maybe_stamp(j, options);
  if (!inputs.param_names.empty()) j["params"] = inputs.param_names;

  json lambdas = json::array();
  for (int i = 0; i < m; ++i) lambdas.push_back(spec.eigenvalues[i]);
  j["eigenvalues"] = lambdas;

  // eigenvectors[i][k] = component i of eigenvector k.
  json vectors = json::array();
  for (int i = 0; i < m; ++i) {
    json row = json::array();
    for (int k = 0; k < m; ++k) row.push_back(spec.eigenvectors(i, k));
    vectors.push_back(std::move(row));
  }
  j["eigenvectors"] = vectors;

  if (spec.info) {
    json est;
    est["method"] = spec.info->method_name();
    if (spec.info->points_per_dim > 0) {
      est["points_per_dim"] = spec.info->points_per_dim;
    }
    est["sample_count"] = spec.info->sample_count;
    if (spec.info->seeded) est["seed"] = spec.info->seed;
    est["model"] = spec.info->model_name;
    est["space"] = spec.info->space_fingerprint;
    j["estimator"] = est;
  }

  if (inputs.subspace != nullptr) {
    j["selection"] = {{"strategy", inputs.subspace->selection},
                      {"n", inputs.subspace->n},
                      {"gap_after", inputs.subspace->n}};
  }

  if (spec.bootstrap) {
    const auto& b = *spec.bootstrap;
    json intervals = json::array();
    for (int i = 0; i < m; ++i) {
      intervals.push_back({{"min", b.lambda_min[i]},
                           {"max", b.lambda_max[i]},
                           {"p2_5", b.lambda_lo[i]},
                           {"p97_5", b.lambda_hi[i]}});
    }
    json dists = json::array();
    for (const auto& d : b.distances) {
      dists.push_back({{"n", d.n},
                       {"min", d.min},
                       {"max", d.max},
                       {"p2_5", d.lo},
                       {"p97_5", d.hi},
                       {"mean", d.mean}});
    }
    j["bootstrap"] = {{"replicates", b.replicates},
                      {"seed", b.seed},
                      {"eigenvalue_intervals", intervals},
                      {"subspace_distances", dists}};
  }

  if (inputs.consistency != nullptr) {
    const auto& c = *inputs.consistency;
    j["consistency"] = {{"zero_tol", c.zero_tol},
                        {"nonzero_count", c.nonzero_count},
                        {"restricted_rank", c.restricted_rank},
                        {"count_ok", c.count_ok},
                        {"k", c.k},
                        {"containment_distance", c.containment_distance},
                        {"containment_ok", c.containment_ok},
                        {"ok", c.ok()}};
  }
  dump_to(path, j);
}

void write_eigenvalues_csv(const std::filesystem::path& path,
                           const subspace::Spectrum& spectrum) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "index,eigenvalue\n";
  for (int i = 0; i < spectrum.m(); ++i) {
    out << (i + 1) << "," << format_double(spectrum.eigenvalues[i]) << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_sensitivity_report(const std::filesystem::path& path,
                              const diagnostics::SensitivityReport& report,
                              const std::vector<std::string>& param_names,
                              const ReportOptions& options) {
  json j;
  maybe_stamp(j, options);
  j["n"] = report.n;
  j["params"] = param_names;
  j["scores"] = report.scores;
  j["raw_scores"] = report.raw_scores;
  j["first_eigenvector"] = report.first_eigenvector;
  dump_to(path, j);
}

std::string sensitivity_table_text(const diagnostics::SensitivityReport& report,
                                   const std::vector<std::string>& param_names) {
  size_t width = 9;  // len("parameter")
  for (const auto& name : param_names) width = std::max(width, name.size());
  std::ostringstream out;
  out << "parameter";
  out << std::string(width - 9, ' ') << "  score         w1\n";
  for (size_t i = 0; i < param_names.size(); ++i) {
    out << param_names[i] << std::string(width - param_names[i].size(), ' ');
    char buf[48];
    std::snprintf(buf, sizeof buf, "  %-12.4e  %+.4e", report.scores[i],
                  report.first_eigenvector[i]);
    out << buf << "\n";
  }
  return out.str();
}

void write_summary_csv(const std::filesystem::path& path,
                       const diagnostics::SummaryData& data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "y1";
  if (data.n > 1) out << ",y2";
  out << ",f";
  for (const auto& name : data.param_names) out << "," << name;
  out << "\n";
  for (const auto& row : data.rows) {
    out << format_double(row.y1);
    if (data.n > 1) out << "," << format_double(row.y2);
    out << "," << format_double(row.f);
    for (double x : row.x_physical) out << "," << format_double(x);
    out << "\n";
  }
  if (!out) throw IoError("write failed for " + path.string());
}

void write_summary_svg(const std::filesystem::path& path,
                       const diagnostics::SummaryData& data,
                       const std::string& title) {
  if (data.rows.empty()) throw ArgumentError("summary svg: no rows");
  const double W = 640.0, H = 480.0, margin = 56.0;

  double xmin = data.rows[0].y1, xmax = xmin;
  double ymin = 0.0, ymax = 0.0, fmin = data.rows[0].f, fmax = fmin;
  if (data.n > 1) {
    ymin = ymax = data.rows[0].y2;
  } else {
    ymin = ymax = data.rows[0].f;
  }
  for (const auto& row : data.rows) {
    xmin = std::min(xmin, row.y1);
    xmax = std::max(xmax, row.y1);
    const double y = data.n > 1 ? row.y2 : row.f;
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
    fmin = std::min(fmin, row.f);
    fmax = std::max(fmax, row.f);
  }
  const AxisMap xmap{xmin, xmax, margin, W - margin};
  const AxisMap ymap{ymin, ymax, H - margin, margin};

  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<!-- " << title << "\n";
  if (data.n > 1) {
    out << "     axes: x = y1, y = y2; fill color encodes f over ["
        << format_double(fmin) << ", " << format_double(fmax) << "]\n"
        << "     with a 16-step ramp: bucket = floor(16*(f-min)/(max-min)),\n"
        << "     clamped to 0..15, colors (bucket 0..15):\n     ";
    for (int i = 0; i < 16; ++i) out << kRamp[i] << (i + 1 < 16 ? " " : "\n");
  } else {
    out << "     axes: x = y1 (active variable), y = f\n";
  }
  out << "-->\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
      << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << " " << H
      << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  // axes
  out << "<line x1=\"" << svg_num(margin) << "\" y1=\"" << svg_num(H - margin)
      << "\" x2=\"" << svg_num(W - margin) << "\" y2=\""
      << svg_num(H - margin) << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << svg_num(margin) << "\" y1=\"" << svg_num(H - margin)
      << "\" x2=\"" << svg_num(margin) << "\" y2=\"" << svg_num(margin)
      << "\" stroke=\"black\"/>\n";
  // axis range labels
  out << "<text x=\"" << svg_num(margin) << "\" y=\"" << svg_num(H - margin + 16)
      << "\" font-size=\"11\">" << format_double(xmin) << "</text>\n";
  out << "<text x=\"" << svg_num(W - margin) << "\" y=\""
      << svg_num(H - margin + 16) << "\" font-size=\"11\" text-anchor=\"end\">"
      << format_double(xmax) << "</text>\n";
  out << "<text x=\"" << svg_num(margin - 4) << "\" y=\""
      << svg_num(H - margin) << "\" font-size=\"11\" text-anchor=\"end\">"
      << format_double(ymin) << "</text>\n";
  out << "<text x=\"" << svg_num(margin - 4) << "\" y=\"" << svg_num(margin)
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_double(ymax)
      << "</text>\n";
  out << "<text x=\"" << svg_num(W / 2) << "\" y=\"20\" font-size=\"13\" "
         "text-anchor=\"middle\">" << title << "</text>\n";

  for (const auto& row : data.rows) {
    const double px = xmap(row.y1);
    const double py = ymap(data.n > 1 ? row.y2 : row.f);
    std::string fill = "#39568c";
    if (data.n > 1) {
      int bucket = 0;
      if (fmax > fmin) {
        bucket = static_cast<int>(16.0 * (row.f - fmin) / (fmax - fmin));
        bucket = std::clamp(bucket, 0, 15);
      }
      fill = kRamp[bucket];
    }
    out << "<circle cx=\"" << svg_num(px) << "\" cy=\"" << svg_num(py)
        << "\" r=\"2.4\" fill=\"" << fill << "\" fill-opacity=\"0.8\"/>\n";
  }
  out << "</svg>\n";
  if (!out) throw IoError("write failed for " + path.string());
}

void write_check_report(const std::filesystem::path& path,
                        const CheckReport& report,
                        const ReportOptions& options) {
  json j;
  maybe_stamp(j, options);
  json checks = json::array();
  for (const auto& e : report.entries) {
    json entry = {{"name", e.name},
                  {"value", e.value},
                  {"tolerance", e.tolerance},
                  {"ok", e.ok}};
    if (!e.detail.empty()) entry["detail"] = e.detail;
    checks.push_back(std::move(entry));
  }
  j["checks"] = checks;
  j["ok"] = report.ok();
  dump_to(path, j);
}

}  // namespace dimred::io
