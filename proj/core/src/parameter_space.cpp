#include "dimred/parameter_space.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "dimred/errors.hpp"
#include "dimred/format.hpp"

namespace dimred::models {

ParameterSpace::ParameterSpace(std::vector<ParamRange> params,
                               std::map<std::string, double> constants)
    : params_(std::move(params)), constants_(std::move(constants)) {
  if (params_.empty()) throw ArgumentError("parameter space needs at least one parameter");
  std::set<std::string> seen;
  for (const auto& p : params_) {
    if (p.name.empty()) throw ArgumentError("parameter with empty name");
    if (!seen.insert(p.name).second)
      throw ArgumentError("duplicate parameter name '" + p.name + "'");
    if (!(p.low > 0.0))
      throw ArgumentError("parameter '" + p.name + "': lower bound must be positive");
    if (!(p.low < p.high))
      throw ArgumentError("parameter '" + p.name + "': bounds must satisfy low < high");
    log_low_.push_back(std::log(p.low));
    log_high_.push_back(std::log(p.high));
  }
}

double ParameterSpace::constant_or(const std::string& name, double fallback) const {
  auto it = constants_.find(name);
  return it == constants_.end() ? fallback : it->second;
}

std::vector<std::string> ParameterSpace::names() const {
  std::vector<std::string> out;
  out.reserve(params_.size());
  for (const auto& p : params_) out.push_back(p.name);
  return out;
}

void ParameterSpace::physical_from_normalized(std::span<const double> xi,
                                              std::span<double> out) const {
  for (int i = 0; i < m(); ++i) out[i] = std::exp(log_center(i) + log_halfwidth(i) * xi[i]);
}

std::vector<double> ParameterSpace::physical_from_normalized(std::span<const double> xi) const {
  std::vector<double> out(m());
  physical_from_normalized(xi, out);
  return out;
}

std::vector<double> ParameterSpace::normalized_from_physical(std::span<const double> t) const {
  std::vector<double> out(m());
  for (int i = 0; i < m(); ++i) {
    if (!(t[i] > 0.0))
      throw DomainError("parameter '" + params_[i].name + "': physical value must be positive");
    out[i] = (std::log(t[i]) - log_center(i)) / log_halfwidth(i);
  }
  return out;
}

std::string ParameterSpace::fingerprint() const {
  std::ostringstream s;
  for (const auto& p : params_)
    s << p.name << ":" << format_double(p.low) << ":" << format_double(p.high) << ";";
  return s.str();
}

ParameterSpace hartmann_space() {
  return ParameterSpace({{"mu", 0.05, 0.2},
                         {"rho", 1.0, 5.0},
                         {"dp0dx", 0.5, 3.0},
                         {"eta", 0.5, 3.0},
                         {"B0", 0.1, 1.0}},
                        {{"l", 1.0}, {"mu0", 1.0}});
}

ParameterSpace generator_space() {
  return ParameterSpace({{"mu", 0.001, 0.01},
                         {"rho", 0.1, 10.0},
                         {"dp0dx", 0.1, 0.5},
                         {"eta", 0.1, 10.0},
                         {"B0", 0.1, 1.0}},
                        {{"l", 1.0}, {"mu0", 1.0}});
}

}  // namespace dimred::models
