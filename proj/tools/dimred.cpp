// dimred: dimensional analysis + active-subspace toolkit front end.
//
// Subcommands:
//   pi        Buckingham-Pi report from a quantity-system file
//   subspace  estimate C, eigendecompose, select, cross-check, bootstrap
//   summary   1-D/2-D summary-plot data and SVG scatters
//   check     gradient and activity-identity audits
//
// Exit codes: 0 success, 1 internal/numeric failure, 2 user-input error.

#include <CLI11.hpp>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "dimred/activity.hpp"
#include "dimred/bootstrap.hpp"
#include "dimred/cmatrix.hpp"
#include "dimred/errors.hpp"
#include "dimred/format.hpp"
#include "dimred/hartmann.hpp"
#include "dimred/io.hpp"
#include "dimred/log_ridge.hpp"
#include "dimred/ridge_model.hpp"
#include "dimred/sample_io.hpp"
#include "dimred/spectrum.hpp"
#include "dimred/summary.hpp"
#include "dimred/units.hpp"

namespace {

using namespace dimred;
namespace fs = std::filesystem;

struct CommonOpts {
  std::string out_dir = ".";
  bool no_timestamp = false;

  io::ReportOptions report() const { return {.timestamp = !no_timestamp}; }
  fs::path out(const std::string& name) const {
    return fs::path(out_dir) / name;
  }
  void prepare() const { fs::create_directories(out_dir); }
};

struct PiOpts {
  CommonOpts common;
  std::string system_file;
  bool verify = false;
};

struct SubspaceOpts {
  CommonOpts common;
  std::string model;
  std::string space_file;
  std::string samples_file;
  std::string system_file;
  std::vector<std::string> aliases;
  int quadrature = 0;
  std::int64_t mc = 0;
  std::optional<std::uint64_t> seed;
  int bootstrap = 0;
  std::string dim = "auto";
  int threads = 0;
  bool force = false;
};

struct SummaryOpts {
  CommonOpts common;
  std::string model;
  std::string space_file;
  std::string samples_file;
  int quadrature = 11;
  std::optional<std::uint64_t> seed;
  int count = 1000;
  std::string dim = "auto";
  bool plot2d = false;
  int threads = 0;
};

struct CheckOpts {
  CommonOpts common;
  std::string model;
  std::string space_file;
  std::optional<std::uint64_t> seed;
  int points = 100;
  int quadrature = 11;
  double fd_step = 1e-6;
  double tol = 1e-6;
  double activity_tol = 1e-10;
  std::string dim = "auto";
  int corrupt_component = -1;
  double corrupt_offset = 0.5;
};

std::unique_ptr<models::ModelFunction> make_model(
    const std::string& name, const models::ParameterSpace& space) {
  using models::HartmannModel;
  if (name == "hartmann_u_avg") {
    return std::make_unique<HartmannModel>(HartmannModel::Qoi::kUAvg, space);
  }
  if (name == "hartmann_b_ind") {
    return std::make_unique<HartmannModel>(HartmannModel::Qoi::kBInd, space);
  }
  throw ArgumentError("unknown model '" + name +
                      "' (built-ins: hartmann_u_avg, hartmann_b_ind)");
}

models::ParameterSpace space_for_model(const std::string& space_file) {
  if (space_file.empty()) return models::hartmann_space();
  return io::load_parameter_space(space_file).space;
}

subspace::SelectionStrategy parse_dim(const std::string& dim) {
  if (dim == "auto") return subspace::LargestGap{};
  try {
    const int n = std::stoi(dim);
    return subspace::ExplicitDimension{n};
  } catch (const std::exception&) {
    throw ArgumentError("--dim expects an integer or 'auto', got '" + dim +
                        "'");
  }
}

std::vector<std::string> apply_aliases(
    const std::vector<std::string>& names,
    const std::vector<std::string>& alias_specs) {
  std::map<std::string, std::string> aliases;
  for (const auto& spec : alias_specs) {
    const size_t eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size()) {
      throw ArgumentError("--alias expects PARAM=INPUT, got '" + spec + "'");
    }
    aliases[spec.substr(0, eq)] = spec.substr(eq + 1);
  }
  std::vector<std::string> mapped;
  mapped.reserve(names.size());
  for (const auto& name : names) {
    const auto it = aliases.find(name);
    mapped.push_back(it == aliases.end() ? name : it->second);
  }
  return mapped;
}

int run_pi(const PiOpts& opts) {
  opts.common.prepare();
  const units::QuantitySystem system =
      io::load_quantity_system(opts.system_file);
  const units::PiGroupSet pi = units::pi_groups(system.inputs, system.output);
  std::optional<units::VerifyReport> audit;
  if (opts.verify) {
    audit = units::verify_pi_groups(pi);
    if (!audit->ok()) {
      throw NumericError("pi-group verification failed unexpectedly");
    }
  }
  io::write_pi_report(opts.common.out("pi.json"), pi, audit,
                      opts.common.report());
  std::cout << io::pi_report_text(pi);
  std::cout << "wrote " << opts.common.out("pi.json").string() << "\n";
  return 0;
}

int run_subspace(const SubspaceOpts& opts) {
  const bool from_samples = !opts.samples_file.empty();
  const bool has_estimator = opts.quadrature > 0 || opts.mc > 0;
  if (from_samples == !opts.model.empty()) {
    throw ArgumentError(
        "exactly one gradient source: either --samples FILE or --model NAME");
  }
  if (from_samples && has_estimator) {
    throw ArgumentError("--quadrature/--mc do not apply to --samples input");
  }
  if (!from_samples) {
    if (opts.quadrature > 0 && opts.mc > 0) {
      throw ArgumentError("choose one estimator: --quadrature N or --mc M");
    }
    if (!has_estimator) {
      throw ArgumentError("an estimator is required: --quadrature N or --mc M");
    }
    if (opts.mc > 0 && !opts.seed) {
      throw ArgumentError("--mc requires --seed (stochastic path)");
    }
  }
  if (opts.bootstrap > 0 && !opts.seed) {
    throw ArgumentError("--bootstrap requires --seed (stochastic path)");
  }
  opts.common.prepare();

  std::unique_ptr<models::ModelFunction> model;
  std::optional<models::ParameterSpace> space;
  std::optional<subspace::GradientSampleSet> samples;
  subspace::CMatrixEstimate estimate;

  if (from_samples) {
    ingest::LoadedSamples loaded = ingest::load_samples(opts.samples_file);
    if (!opts.space_file.empty()) {
      const models::ParameterSpace expected =
          io::load_parameter_space(opts.space_file).space;
      if (!loaded.space.same_box(expected)) {
        throw ArgumentError("sample file bounds do not match --space");
      }
    }
    space = loaded.space;
    samples = std::move(loaded.samples);
    estimate = subspace::estimate_c_from_samples(*samples);
  } else {
    space = space_for_model(opts.space_file);
    model = make_model(opts.model, *space);
    if (opts.quadrature > 0) {
      estimate = subspace::estimate_c_quadrature(*model, opts.quadrature,
                                                 opts.force, opts.threads);
    } else {
      auto [est, drawn] = subspace::estimate_c_monte_carlo(
          *model, opts.mc, *opts.seed, opts.threads);
      estimate = std::move(est);
      samples = std::move(drawn);
    }
  }

  subspace::Spectrum spectrum = subspace::eigendecompose(estimate);
  if (opts.bootstrap > 0) {
    if (!samples) {
      throw ArgumentError(
          "--bootstrap needs gradient samples (--mc or --samples), not "
          "quadrature");
    }
    spectrum.bootstrap = subspace::bootstrap_spectrum(*samples, opts.bootstrap,
                                                      *opts.seed, opts.threads);
  }

  const subspace::ActiveSubspace sub =
      subspace::select_dimension(spectrum, parse_dim(opts.dim));
  const diagnostics::SensitivityReport sensitivity =
      diagnostics::eigenvector_sensitivities(spectrum, sub.n);

  std::optional<diagnostics::ConsistencyReport> consistency;
  if (!opts.system_file.empty()) {
    const units::QuantitySystem system =
        io::load_quantity_system(opts.system_file);
    const units::PiGroupSet pi =
        units::pi_groups(system.inputs, system.output);
    const diagnostics::LogRidgeMatrix lrm = diagnostics::log_ridge_matrix(pi);
    const std::vector<std::string> varied =
        apply_aliases(space->names(), opts.aliases);
    const diagnostics::RestrictedLogRidge restricted =
        diagnostics::restrict_rows(lrm, varied);
    consistency =
        diagnostics::consistency_check(spectrum, *space, restricted);
  }

  io::SpectrumReportInputs report;
  report.spectrum = &spectrum;
  report.subspace = &sub;
  report.consistency = consistency ? &*consistency : nullptr;
  report.param_names = space->names();
  io::write_spectrum_report(opts.common.out("spectrum.json"), report,
                            opts.common.report());
  io::write_eigenvalues_csv(opts.common.out("eigenvalues.csv"), spectrum);
  io::write_sensitivity_report(opts.common.out("sensitivity.json"),
                               sensitivity, space->names(),
                               opts.common.report());

  std::cout << "eigenvalues:";
  for (int i = 0; i < spectrum.m(); ++i) {
    std::cout << " " << format_double(spectrum.eigenvalues[i]);
  }
  std::cout << "\nselected n = " << sub.n << " (" << sub.selection << ")\n";
  if (consistency) {
    std::cout << "consistency: nonzero count " << consistency->nonzero_count
              << " <= rank " << consistency->restricted_rank << ": "
              << (consistency->count_ok ? "ok" : "VIOLATED")
              << "; containment distance "
              << format_double(consistency->containment_distance) << ": "
              << (consistency->containment_ok ? "ok" : "VIOLATED") << "\n";
  }
  std::cout << io::sensitivity_table_text(sensitivity, space->names());
  std::cout << "wrote " << opts.common.out("spectrum.json").string() << ", "
            << opts.common.out("eigenvalues.csv").string() << ", "
            << opts.common.out("sensitivity.json").string() << "\n";
  return 0;
}

int run_summary(const SummaryOpts& opts) {
  const bool from_samples = !opts.samples_file.empty();
  if (from_samples == !opts.model.empty()) {
    throw ArgumentError(
        "exactly one gradient source: either --samples FILE or --model NAME");
  }
  if (!from_samples && !opts.seed) {
    throw ArgumentError("--model summaries draw fresh points and require "
                        "--seed (stochastic path)");
  }
  if (opts.count < 1) throw ArgumentError("--count must be >= 1");
  opts.common.prepare();

  std::unique_ptr<models::ModelFunction> model;
  std::optional<models::ParameterSpace> space;
  std::optional<subspace::GradientSampleSet> samples;
  subspace::CMatrixEstimate estimate;
  if (from_samples) {
    ingest::LoadedSamples loaded = ingest::load_samples(opts.samples_file);
    space = loaded.space;
    samples = std::move(loaded.samples);
    estimate = subspace::estimate_c_from_samples(*samples);
  } else {
    space = space_for_model(opts.space_file);
    model = make_model(opts.model, *space);
    estimate = subspace::estimate_c_quadrature(*model, opts.quadrature, false,
                                               opts.threads);
  }
  const subspace::Spectrum spectrum = subspace::eigendecompose(estimate);
  const subspace::ActiveSubspace sub =
      subspace::select_dimension(spectrum, parse_dim(opts.dim));

  const diagnostics::SummaryData one =
      from_samples ? diagnostics::summary_1d(*samples, sub, opts.count)
                   : diagnostics::summary_1d(*model, sub, opts.count,
                                             *opts.seed);
  const std::string label = from_samples ? samples->model_name : opts.model;
  io::write_summary_csv(opts.common.out("summary1.csv"), one);
  io::write_summary_svg(opts.common.out("summary1.svg"), one,
                        label + ": 1-D summary");
  std::cout << "wrote " << opts.common.out("summary1.csv").string() << ", "
            << opts.common.out("summary1.svg").string() << "\n";

  if (sub.n >= 2) {
    const diagnostics::SummaryData two =
        from_samples ? diagnostics::summary_2d(*samples, sub, opts.count)
                     : diagnostics::summary_2d(*model, sub, opts.count,
                                               *opts.seed);
    io::write_summary_csv(opts.common.out("summary2.csv"), two);
    io::write_summary_svg(opts.common.out("summary2.svg"), two,
                          label + ": 2-D summary");
    std::cout << "wrote " << opts.common.out("summary2.csv").string() << ", "
              << opts.common.out("summary2.svg").string() << "\n";
  } else if (opts.plot2d) {
    throw ArgumentError(
        "2-D summary requested but the selected active dimension is n = " +
        std::to_string(sub.n) +
        "; re-run with --dim 2 to force a two-dimensional subspace");
  }
  return 0;
}

int run_check(const CheckOpts& opts) {
  if (!opts.seed) {
    throw ArgumentError("--seed is required (audit points are random)");
  }
  opts.common.prepare();
  const models::ParameterSpace space = space_for_model(opts.space_file);
  std::shared_ptr<models::ModelFunction> model =
      make_model(opts.model, space);
  if (opts.corrupt_component >= 0) {
    model = std::make_shared<models::CorruptedGradientModel>(
        model, opts.corrupt_component, opts.corrupt_offset);
  }

  io::CheckReport report;

  const models::GradientAuditResult audit =
      models::audit_gradient(*model, opts.points, *opts.seed, opts.fd_step);
  io::CheckReport::Entry fd;
  fd.name = "gradient_fd_agreement";
  fd.value = audit.max_rel_error;
  fd.tolerance = opts.tol;
  fd.ok = audit.max_rel_error < opts.tol;
  if (audit.worst_component >= 0) {
    fd.detail = "worst component " + std::to_string(audit.worst_component) +
                " (" + space.params()[audit.worst_component].name + ")";
  }
  report.entries.push_back(fd);

  const subspace::CMatrixEstimate estimate =
      subspace::estimate_c_quadrature(*model, opts.quadrature);
  const subspace::Spectrum spectrum = subspace::eigendecompose(estimate);
  const subspace::ActiveSubspace sub =
      subspace::select_dimension(spectrum, parse_dim(opts.dim));
  const subspace::ActivityReport activity = subspace::activity_identity_check(
      *model, spectrum, sub.n, opts.quadrature);
  io::CheckReport::Entry act;
  act.name = "activity_identity_active";
  act.value = activity.active_residual;
  act.tolerance = opts.activity_tol;
  act.ok = activity.active_residual < opts.activity_tol;
  act.detail = "n = " + std::to_string(sub.n);
  report.entries.push_back(act);
  io::CheckReport::Entry inact;
  inact.name = "activity_identity_inactive";
  inact.value = activity.inactive_residual;
  inact.tolerance = opts.activity_tol;
  inact.ok = activity.inactive_residual < opts.activity_tol;
  inact.detail = act.detail;
  report.entries.push_back(inact);

  io::write_check_report(opts.common.out("check.json"), report,
                         opts.common.report());
  for (const auto& e : report.entries) {
    std::cout << (e.ok ? "ok  " : "FAIL") << "  " << e.name << "  "
              << format_double(e.value) << " (tol " << format_double(e.tolerance)
              << ")" << (e.detail.empty() ? "" : "  " + e.detail) << "\n";
  }
  std::cout << "wrote " << opts.common.out("check.json").string() << "\n";
  return report.ok() ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts& common) {
  cmd->add_option("--out", common.out_dir, "output directory")
      ->capture_default_str();
  cmd->add_flag("--no-timestamp", common.no_timestamp,
                "omit the generated_at line so reruns are byte-identical");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dimensional analysis + gradient-based active subspaces"};
  app.require_subcommand(1);

  PiOpts pi;
  CLI::App* pi_cmd =
      app.add_subcommand("pi", "Buckingham-Pi groups of a quantity system");
  pi_cmd->add_option("--system", pi.system_file, "quantity-system JSON file")
      ->required();
  pi_cmd->add_flag("--verify", pi.verify,
                   "re-verify the factorization exactly and embed the audit");
  add_common(pi_cmd, pi.common);

  SubspaceOpts sub;
  CLI::App* sub_cmd = app.add_subcommand(
      "subspace", "estimate C, eigendecompose, select the active subspace");
  sub_cmd->add_option("--model", sub.model,
                      "built-in model (hartmann_u_avg | hartmann_b_ind)");
  sub_cmd->add_option("--space", sub.space_file, "parameter-space JSON file");
  sub_cmd->add_option("--samples", sub.samples_file, "gradient sample CSV");
  sub_cmd->add_option("--system", sub.system_file,
                      "quantity-system JSON for the consistency cross-check");
  sub_cmd->add_option("--alias", sub.aliases,
                      "PARAM=INPUT name mapping for the cross-check");
  sub_cmd->add_option("--quadrature", sub.quadrature,
                      "tensor Gauss-Legendre points per dimension");
  sub_cmd->add_option("--mc", sub.mc, "Monte Carlo sample count");
  sub_cmd->add_option("--seed", sub.seed, "64-bit seed for stochastic paths");
  sub_cmd->add_option("--bootstrap", sub.bootstrap,
                      "bootstrap replicate count (needs gradient samples "
                      "from --mc or --samples)");
  sub_cmd->add_option("--dim", sub.dim, "active dimension: integer or 'auto'")
      ->capture_default_str();
  sub_cmd->add_option("--threads", sub.threads,
                      "worker threads (0 = auto); never changes results");
  sub_cmd->add_flag("--force", sub.force,
                    "override the quadrature point-budget guard");
  add_common(sub_cmd, sub.common);

  SummaryOpts summary;
  CLI::App* sum_cmd =
      app.add_subcommand("summary", "summary-plot data and SVG scatters");
  sum_cmd->add_option("--model", summary.model,
                      "built-in model (hartmann_u_avg | hartmann_b_ind)");
  sum_cmd->add_option("--space", summary.space_file,
                      "parameter-space JSON file");
  sum_cmd->add_option("--samples", summary.samples_file,
                      "gradient sample CSV to re-plot");
  sum_cmd->add_option("--quadrature", summary.quadrature,
                      "points per dimension for the subspace estimate")
      ->capture_default_str();
  sum_cmd->add_option("--seed", summary.seed, "seed for the plot draws");
  sum_cmd->add_option("--count", summary.count, "number of plotted samples")
      ->capture_default_str();
  sum_cmd->add_option("--dim", summary.dim,
                      "active dimension: integer or 'auto'")
      ->capture_default_str();
  sum_cmd->add_flag("--plot2d", summary.plot2d,
                    "fail if a 2-D summary cannot be produced");
  sum_cmd->add_option("--threads", summary.threads, "worker threads (0 = auto)");
  add_common(sum_cmd, summary.common);

  CheckOpts check;
  CLI::App* check_cmd =
      app.add_subcommand("check", "gradient and activity-identity audits");
  check_cmd->add_option("--model", check.model,
                        "built-in model (hartmann_u_avg | hartmann_b_ind)")
      ->required();
  check_cmd->add_option("--space", check.space_file,
                        "parameter-space JSON file");
  check_cmd->add_option("--seed", check.seed, "seed for the audit points");
  check_cmd->add_option("--points", check.points, "number of audit points")
      ->capture_default_str();
  check_cmd->add_option("--quadrature", check.quadrature,
                        "points per dimension for the identity check")
      ->capture_default_str();
  check_cmd->add_option("--fd-step", check.fd_step,
                        "finite-difference step in normalized coordinates")
      ->capture_default_str();
  check_cmd->add_option("--tol", check.tol, "gradient-agreement tolerance")
      ->capture_default_str();
  check_cmd->add_option("--activity-tol", check.activity_tol,
                        "activity-identity residual tolerance")
      ->capture_default_str();
  check_cmd->add_option("--dim", check.dim,
                        "active dimension for the identity check")
      ->capture_default_str();
  // Deliberate-failure hooks for exercising the audit's failure path.
  check_cmd->add_option("--corrupt-component", check.corrupt_component, "")
      ->group("");
  check_cmd->add_option("--corrupt-offset", check.corrupt_offset, "")
      ->group("");
  add_common(check_cmd, check.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (pi_cmd->parsed()) return run_pi(pi);
    if (sub_cmd->parsed()) return run_subspace(sub);
    if (sum_cmd->parsed()) return run_summary(summary);
    if (check_cmd->parsed()) return run_check(check);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
