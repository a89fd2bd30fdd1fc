#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

namespace dimred::models {

// Physical (linear-units) bounds of one positive parameter.
struct ParamRange {
  std::string name;
  double low = 0.0;
  double high = 0.0;
};

// Ordered parameter box with the log-uniform sampling convention.
//
// A physical value t > 0 maps to s = log t and then affinely to
// xi = (2s - (log_high + log_low)) / (log_high - log_low) in [-1, 1].
// The sampling density is uniform on the normalized cube, and gradients are
// taken with respect to xi throughout (chain factor t * (log_high-log_low)/2
// applied to physical-coordinate derivatives).
class ParameterSpace {
 public:
  ParameterSpace() = default;
  ParameterSpace(std::vector<ParamRange> params, std::map<std::string, double> constants = {});

  int m() const { return static_cast<int>(params_.size()); }
  const std::vector<ParamRange>& params() const { return params_; }
  const std::map<std::string, double>& constants() const { return constants_; }
  double constant_or(const std::string& name, double fallback) const;

  std::vector<std::string> names() const;
  double log_low(int i) const { return log_low_[i]; }
  double log_high(int i) const { return log_high_[i]; }
  double log_center(int i) const { return 0.5 * (log_low_[i] + log_high_[i]); }
  double log_halfwidth(int i) const { return 0.5 * (log_high_[i] - log_low_[i]); }

  void physical_from_normalized(std::span<const double> xi, std::span<double> out) const;
  std::vector<double> physical_from_normalized(std::span<const double> xi) const;
  std::vector<double> normalized_from_physical(std::span<const double> t) const;

  // Canonical textual identity: parameter names with bit-exact bounds.
  std::string fingerprint() const;
  bool same_box(const ParameterSpace& other) const { return fingerprint() == other.fingerprint(); }

 private:
  std::vector<ParamRange> params_;
  std::map<std::string, double> constants_;
  std::vector<double> log_low_, log_high_;
};

// Bundled boxes for the built-in Hartmann model and for externally supplied
// generator-style sample sets.  Constants: l = 1, mu0 = 1.
ParameterSpace hartmann_space();
ParameterSpace generator_space();

}  // namespace dimred::models
