#include "dimred/sample_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <system_error>

#include "dimred/errors.hpp"
#include "dimred/format.hpp"

namespace dimred::ingest {
namespace {

using nlohmann::json;

double parse_field(const std::string& field, std::int64_t row) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw ParseError("sample file: unparseable number '" + field +
                     "' in row " + std::to_string(row));
  }
  return value;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

std::string strip_cr(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return line;
}

}  // namespace

LoadedSamples load_samples(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("sample file: cannot open " + path.string());

  std::string header_text;
  std::string line;
  std::vector<std::string> data_lines;
  bool in_header = true;
  while (std::getline(in, line)) {
    line = strip_cr(std::move(line));
    if (in_header && !line.empty() && line[0] == '#') {
      size_t start = 1;
      if (start < line.size() && line[start] == ' ') ++start;
      header_text.append(line, start, std::string::npos);
      header_text.push_back('\n');
      continue;
    }
    in_header = false;
    if (!line.empty()) data_lines.push_back(std::move(line));
  }

  json header;
  try {
    header = json::parse(header_text);
  } catch (const json::exception& e) {
    throw ParseError("sample file: bad JSON header in " + path.string() +
                     ": " + e.what());
  }

  LoadedSamples loaded;
  try {
    if (header.at("format_version").get<int>() != 1) {
      throw ParseError("sample file: unsupported format_version");
    }
    const int m = header.at("m").get<int>();
    std::vector<models::ParamRange> params;
    for (const auto& p : header.at("params")) {
      params.push_back({p.at("name").get<std::string>(),
                        p.at("low").get<double>(),
                        p.at("high").get<double>()});
    }
    if (static_cast<int>(params.size()) != m) {
      throw ParseError("sample file: params list does not match m");
    }
    loaded.space = models::ParameterSpace(params, {});
    loaded.convention = header.at("convention").get<std::string>();
    loaded.model = header.value("model", std::string("external"));
    loaded.samples.provenance = header.value("provenance", std::string());
    if (header.contains("seed")) {
      loaded.samples.seed = header.at("seed").get<std::uint64_t>();
      loaded.samples.seeded = true;
    }
  } catch (const json::exception& e) {
    throw ParseError("sample file: incomplete header in " + path.string() +
                     ": " + e.what());
  }
  if (loaded.convention != "normalized_log" && loaded.convention != "physical") {
    throw ParseError("sample file: unknown coordinate convention '" +
                     loaded.convention + "'");
  }

  const int m = loaded.space.m();
  loaded.samples.param_names = loaded.space.names();
  loaded.samples.space_fingerprint = loaded.space.fingerprint();
  loaded.samples.model_name = loaded.model;

  // Optional column-header line.
  size_t first_data = 0;
  if (!data_lines.empty() && data_lines[0].rfind("x1,", 0) == 0) {
    first_data = 1;
  }

  const bool physical = loaded.convention == "physical";
  std::int64_t row = 0;
  for (size_t li = first_data; li < data_lines.size(); ++li) {
    ++row;
    const std::vector<std::string> fields = split_csv(data_lines[li]);
    if (static_cast<int>(fields.size()) != 2 * m + 1) {
      throw ParseError("sample file: row " + std::to_string(row) +
                       " is truncated (" + std::to_string(fields.size()) +
                       " of " + std::to_string(2 * m + 1) + " columns)");
    }
    std::vector<double> x(m), g(m);
    for (int i = 0; i < m; ++i) x[i] = parse_field(fields[i], row);
    const double f = parse_field(fields[m], row);
    for (int i = 0; i < m; ++i) g[i] = parse_field(fields[m + 1 + i], row);
    for (int i = 0; i < m; ++i) {
      if (!std::isfinite(x[i]) || !std::isfinite(g[i])) {
        throw ParseError("sample file: non-finite entry in row " +
                         std::to_string(row));
      }
    }
    if (!std::isfinite(f)) {
      throw ParseError("sample file: non-finite entry in row " +
                       std::to_string(row));
    }

    models::EvaluationRecord rec;
    rec.f = f;
    if (physical) {
      rec.x_physical = x;
      rec.xi = loaded.space.normalized_from_physical(x);
      rec.grad.resize(m);
      for (int i = 0; i < m; ++i) {
        rec.grad[i] = g[i] * x[i] * loaded.space.log_halfwidth(i);
      }
    } else {
      rec.xi = std::move(x);
      rec.x_physical = loaded.space.physical_from_normalized(rec.xi);
      rec.grad = std::move(g);
    }
    loaded.samples.records.push_back(std::move(rec));
  }

  if (header.contains("count") &&
      header.at("count").get<std::int64_t>() != loaded.samples.size()) {
    throw ParseError("sample file: header count " +
                     std::to_string(header.at("count").get<std::int64_t>()) +
                     " does not match " +
                     std::to_string(loaded.samples.size()) + " data rows");
  }
  if (physical) {
    if (!loaded.samples.provenance.empty()) loaded.samples.provenance += "; ";
    loaded.samples.provenance += "converted physical->normalized_log on load";
  }
  return loaded;
}

subspace::GradientSampleSet load_samples(const std::filesystem::path& path,
                                         const models::ParameterSpace& expected) {
  LoadedSamples loaded = load_samples(path);
  if (!loaded.space.same_box(expected)) {
    throw ArgumentError("sample file: header parameters/bounds do not match "
                        "the requested parameter space");
  }
  loaded.samples.space_fingerprint = expected.fingerprint();
  return std::move(loaded.samples);
}

void save_samples(const subspace::GradientSampleSet& samples,
                  const models::ParameterSpace& space,
                  const std::filesystem::path& path) {
  if (samples.size() < 1) throw ArgumentError("save_samples: empty sample set");
  if (!samples.space_fingerprint.empty() &&
      samples.space_fingerprint != space.fingerprint()) {
    throw ArgumentError("save_samples: sample set was built on a different "
                        "parameter space");
  }
  if (std::filesystem::exists(path)) {
    throw IoError("save_samples: refusing to overwrite existing file " +
                  path.string() + " (sample files are immutable snapshots)");
  }
  const int m = space.m();
  for (std::int64_t i = 0; i < samples.size(); ++i) {
    const auto& rec = samples.records[static_cast<size_t>(i)];
    if (static_cast<int>(rec.xi.size()) != m ||
        static_cast<int>(rec.grad.size()) != m) {
      throw ArgumentError("save_samples: record " + std::to_string(i) +
                          " has inconsistent dimensions");
    }
  }

  json header;
  header["format_version"] = 1;
  header["m"] = m;
  header["convention"] = "normalized_log";
  header["model"] = samples.model_name;
  header["count"] = samples.size();
  if (!samples.provenance.empty()) header["provenance"] = samples.provenance;
  if (samples.seeded) header["seed"] = samples.seed;
  json params = json::array();
  for (const auto& p : space.params()) {
    params.push_back({{"name", p.name}, {"low", p.low}, {"high", p.high}});
  }
  header["params"] = params;

  std::ofstream out(path);
  if (!out) throw IoError("save_samples: cannot write " + path.string());
  std::istringstream header_lines(header.dump(2));
  std::string line;
  while (std::getline(header_lines, line)) out << "# " << line << "\n";

  for (int i = 1; i <= m; ++i) out << "x" << i << ",";
  out << "f";
  for (int i = 1; i <= m; ++i) out << ",g" << i;
  out << "\n";

  for (const auto& rec : samples.records) {
    for (int i = 0; i < m; ++i) out << format_double(rec.xi[i]) << ",";
    out << format_double(rec.f);
    for (int i = 0; i < m; ++i) out << "," << format_double(rec.grad[i]);
    out << "\n";
  }
  if (!out) throw IoError("save_samples: write failed for " + path.string());
}

}  // namespace dimred::ingest
