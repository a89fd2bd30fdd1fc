#pragma once

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "dimred/model.hpp"

namespace dimred::models {

// Profile g: R^r -> R with analytic gradient; the 1-to-r scalar function a
// synthetic ridge is built around.
class RidgeProfile {
 public:
  virtual ~RidgeProfile() = default;
  virtual int r() const = 0;
  virtual std::string name() const = 0;
  virtual double value(std::span<const double> t) const = 0;
  virtual void gradient(std::span<const double> t, std::span<double> out) const = 0;
};

// Profile backed by callables.
class CallbackProfile final : public RidgeProfile {
 public:
  using ValueFn = std::function<double(std::span<const double>)>;
  using GradientFn = std::function<void(std::span<const double>, std::span<double>)>;

  CallbackProfile(int r, std::string name, ValueFn value, GradientFn gradient);

  int r() const override { return r_; }
  std::string name() const override { return name_; }
  double value(std::span<const double> t) const override { return value_(t); }
  void gradient(std::span<const double> t, std::span<double> out) const override {
    gradient_(t, out);
  }

 private:
  int r_;
  std::string name_;
  ValueFn value_;
  GradientFn gradient_;
};

// Neutral m-dimensional box whose log bounds are exactly [-1, 1] per
// coordinate (physical bounds [e^-1, e]), so normalized and log coordinates
// coincide.  Parameters are named x1..xm.
ParameterSpace unit_log_space(int m);

// f(xi) = g(A^T xi) with analytic gradient A * grad g(A^T xi).
// A must be m x r with full column rank, r <= m.
class SyntheticRidge final : public ModelFunction {
 public:
  SyntheticRidge(Eigen::MatrixXd A, std::shared_ptr<const RidgeProfile> profile,
                 ParameterSpace space);

  const ParameterSpace& space() const override { return space_; }
  std::string name() const override;
  double value(std::span<const double> xi) const override;
  using ModelFunction::gradient;
  void gradient(std::span<const double> xi, std::span<double> out) const override;

  const Eigen::MatrixXd& A() const { return A_; }

 private:
  Eigen::MatrixXd A_;
  std::shared_ptr<const RidgeProfile> profile_;
  ParameterSpace space_;
};

std::unique_ptr<ModelFunction> synthetic_ridge(
    Eigen::MatrixXd A, std::shared_ptr<const RidgeProfile> profile);
std::unique_ptr<ModelFunction> synthetic_ridge(
    Eigen::MatrixXd A, std::shared_ptr<const RidgeProfile> profile,
    ParameterSpace space);

// Central differences, O(h^2); falls back to a one-sided O(h) stencil at the
// boundary of [-1,1]^m rather than stepping outside.
std::vector<double> finite_difference_gradient(const ModelFunction& model,
                                               std::span<const double> xi,
                                               double h);

// Compare analytic against finite-difference gradients at `points` seeded
// uniform draws; returns the max relative error (relative to the larger of
// the two gradient norms at each point) and the offending component.
struct GradientAuditResult {
  double max_rel_error = 0.0;
  int worst_component = -1;
  std::vector<double> worst_point;
};
GradientAuditResult audit_gradient(const ModelFunction& model, int points,
                                   std::uint64_t seed, double h = 1e-6);

// Wrapper that perturbs one gradient component by a fixed offset; exists so
// the gradient audit's failure path can be exercised deliberately.
class CorruptedGradientModel final : public ModelFunction {
 public:
  CorruptedGradientModel(std::shared_ptr<const ModelFunction> inner,
                         int component, double offset);

  const ParameterSpace& space() const override { return inner_->space(); }
  std::string name() const override { return inner_->name() + "+corrupt"; }
  double value(std::span<const double> xi) const override {
    return inner_->value(xi);
  }
  using ModelFunction::gradient;
  void gradient(std::span<const double> xi, std::span<double> out) const override;

 private:
  std::shared_ptr<const ModelFunction> inner_;
  int component_;
  double offset_;
};

}  // namespace dimred::models
