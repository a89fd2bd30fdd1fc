#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "dimred/activity.hpp"
#include "dimred/log_ridge.hpp"
#include "dimred/spectrum.hpp"
#include "dimred/summary.hpp"
#include "dimred/units.hpp"

namespace dimred::io {

struct ReportOptions {
  // Reports carry a generated_at timestamp unless suppressed; everything
  // else is a pure function of the inputs, so suppressing it makes reruns
  // byte-identical.
  bool timestamp = true;
};

// --- configuration loaders ---

// { "inputs": [{"name","units"}...], "output": {"name","units"} }
units::QuantitySystem load_quantity_system(const std::filesystem::path& path);

// { "params": [{"name","low","high"}...], "constants": {...}, "model": "..." }
struct SpaceFile {
  models::ParameterSpace space;
  std::string model;  // "hartmann_u_avg" | "hartmann_b_ind" | "external"
};
SpaceFile load_parameter_space(const std::filesystem::path& path);

// --- report writers ---

void write_pi_report(const std::filesystem::path& path,
                     const units::PiGroupSet& pi,
                     const std::optional<units::VerifyReport>& verify,
                     const ReportOptions& options);
std::string pi_report_text(const units::PiGroupSet& pi);

// Spectrum plus whatever companions were computed.
struct SpectrumReportInputs {
  const subspace::Spectrum* spectrum = nullptr;              // required
  const subspace::ActiveSubspace* subspace = nullptr;        // optional
  const diagnostics::ConsistencyReport* consistency = nullptr;  // optional
  std::vector<std::string> param_names;
};
void write_spectrum_report(const std::filesystem::path& path,
                           const SpectrumReportInputs& inputs,
                           const ReportOptions& options);

void write_eigenvalues_csv(const std::filesystem::path& path,
                           const subspace::Spectrum& spectrum);

void write_sensitivity_report(const std::filesystem::path& path,
                              const diagnostics::SensitivityReport& report,
                              const std::vector<std::string>& param_names,
                              const ReportOptions& options);
std::string sensitivity_table_text(const diagnostics::SensitivityReport& report,
                                   const std::vector<std::string>& param_names);

void write_summary_csv(const std::filesystem::path& path,
                       const diagnostics::SummaryData& data);
void write_summary_svg(const std::filesystem::path& path,
                       const diagnostics::SummaryData& data,
                       const std::string& title);

struct CheckReport {
  struct Entry {
    std::string name;
    double value = 0.0;      // observed residual / error
    double tolerance = 0.0;  // pass threshold
    bool ok = false;
    std::string detail;      // e.g. offending component
  };
  std::vector<Entry> entries;

  bool ok() const {
    for (const auto& e : entries) {
      if (!e.ok) return false;
    }
    return true;
  }
};
void write_check_report(const std::filesystem::path& path,
                        const CheckReport& report,
                        const ReportOptions& options);

}  // namespace dimred::io
