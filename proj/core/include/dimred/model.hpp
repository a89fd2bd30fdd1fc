#pragma once

#include <span>
#include <string>
#include <vector>

#include "dimred/parameter_space.hpp"

namespace dimred::models {

// One evaluated point: normalized and physical coordinates, value, and the
// gradient with respect to the normalized coordinates.
struct EvaluationRecord {
  std::vector<double> xi;
  std::vector<double> x_physical;
  double f = 0.0;
  std::vector<double> grad;
};

// Deterministic scalar model over a ParameterSpace.  Evaluation is pure and
// reentrant: identical inputs yield bit-identical outputs, and instances may
// be shared across threads freely.
class ModelFunction {
 public:
  virtual ~ModelFunction() = default;

  virtual const ParameterSpace& space() const = 0;
  virtual std::string name() const = 0;
  virtual double value(std::span<const double> xi) const = 0;

  // Gradient w.r.t. normalized coordinates; out.size() == dim().
  virtual void gradient(std::span<const double> xi, std::span<double> out) const = 0;

  int dim() const { return space().m(); }

  std::vector<double> gradient(std::span<const double> xi) const {
    std::vector<double> g(dim());
    gradient(xi, g);
    return g;
  }
};

}  // namespace dimred::models
