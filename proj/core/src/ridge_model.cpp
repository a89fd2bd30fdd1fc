#include "dimred/ridge_model.hpp"

#include <cmath>
#include <utility>

#include "dimred/errors.hpp"
#include "dimred/rng.hpp"

namespace dimred::models {

CallbackProfile::CallbackProfile(int r, std::string name, ValueFn value,
                                 GradientFn gradient)
    : r_(r), name_(std::move(name)), value_(std::move(value)),
      gradient_(std::move(gradient)) {
  if (r_ < 1) throw ArgumentError("profile: r must be >= 1");
  if (!value_ || !gradient_) throw ArgumentError("profile: missing callable");
}

ParameterSpace unit_log_space(int m) {
  if (m < 1) throw ArgumentError("unit_log_space: m must be >= 1");
  std::vector<ParamRange> params;
  params.reserve(m);
  const double e = std::exp(1.0);
  for (int i = 0; i < m; ++i) {
    params.push_back({"x" + std::to_string(i + 1), 1.0 / e, e});
  }
  return ParameterSpace(params, {});
}

SyntheticRidge::SyntheticRidge(Eigen::MatrixXd A,
                               std::shared_ptr<const RidgeProfile> profile,
                               ParameterSpace space)
    : A_(std::move(A)), profile_(std::move(profile)), space_(std::move(space)) {
  if (!profile_) throw ArgumentError("synthetic_ridge: null profile");
  if (A_.rows() != space_.m()) {
    throw ArgumentError("synthetic_ridge: A must have m rows");
  }
  if (A_.cols() != profile_->r() || A_.cols() > A_.rows()) {
    throw ArgumentError("synthetic_ridge: A must be m x r with r <= m "
                        "matching the profile");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A_);
  if (qr.rank() < A_.cols()) {
    throw ArgumentError("synthetic_ridge: A is rank-deficient");
  }
}

std::string SyntheticRidge::name() const {
  return "ridge[" + profile_->name() + "]";
}

double SyntheticRidge::value(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != space_.m()) {
    throw ArgumentError("synthetic_ridge: dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> x(xi.data(), xi.size());
  Eigen::VectorXd t = A_.transpose() * x;
  return profile_->value({t.data(), static_cast<size_t>(t.size())});
}

void SyntheticRidge::gradient(std::span<const double> xi,
                              std::span<double> out) const {
  if (static_cast<int>(xi.size()) != space_.m() || out.size() != xi.size()) {
    throw ArgumentError("synthetic_ridge: dimension mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> x(xi.data(), xi.size());
  Eigen::VectorXd t = A_.transpose() * x;
  Eigen::VectorXd gt(A_.cols());
  profile_->gradient({t.data(), static_cast<size_t>(t.size())},
                     {gt.data(), static_cast<size_t>(gt.size())});
  Eigen::Map<Eigen::VectorXd>(out.data(), out.size()) = A_ * gt;
}

std::unique_ptr<ModelFunction> synthetic_ridge(
    Eigen::MatrixXd A, std::shared_ptr<const RidgeProfile> profile) {
  const int m = static_cast<int>(A.rows());
  return std::make_unique<SyntheticRidge>(std::move(A), std::move(profile),
                                          unit_log_space(m));
}

std::unique_ptr<ModelFunction> synthetic_ridge(
    Eigen::MatrixXd A, std::shared_ptr<const RidgeProfile> profile,
    ParameterSpace space) {
  return std::make_unique<SyntheticRidge>(std::move(A), std::move(profile),
                                          std::move(space));
}

std::vector<double> finite_difference_gradient(const ModelFunction& model,
                                               std::span<const double> xi,
                                               double h) {
  if (!(h > 0.0)) throw ArgumentError("finite differences: h must be positive");
  const int m = model.dim();
  if (static_cast<int>(xi.size()) != m) {
    throw ArgumentError("finite differences: dimension mismatch");
  }
  std::vector<double> x(xi.begin(), xi.end());
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) {
    const double xi0 = x[i];
    const bool up_ok = xi0 + h <= 1.0;
    const bool down_ok = xi0 - h >= -1.0;
    if (up_ok && down_ok) {
      x[i] = xi0 + h;
      const double fp = model.value(x);
      x[i] = xi0 - h;
      const double fm = model.value(x);
      g[i] = (fp - fm) / (2.0 * h);
    } else if (up_ok) {
      const double f0 = model.value(x);
      x[i] = xi0 + h;
      g[i] = (model.value(x) - f0) / h;
    } else if (down_ok) {
      const double f0 = model.value(x);
      x[i] = xi0 - h;
      g[i] = (f0 - model.value(x)) / h;
    } else {
      throw ArgumentError("finite differences: step h exceeds the box width");
    }
    x[i] = xi0;
  }
  return g;
}

GradientAuditResult audit_gradient(const ModelFunction& model, int points,
                                   std::uint64_t seed, double h) {
  if (points < 1) throw ArgumentError("gradient audit: points must be >= 1");
  const int m = model.dim();
  CounterRng rng(seed, streams::kGradientAudit);
  GradientAuditResult result;
  std::vector<double> xi(m), ga(m);
  std::uint64_t counter = 0;
  for (int p = 0; p < points; ++p) {
    for (int i = 0; i < m; ++i) xi[i] = rng.uniform_sym(counter++);
    model.gradient(xi, ga);
    const std::vector<double> gf = finite_difference_gradient(model, xi, h);
    double na = 0.0, nf = 0.0;
    for (int i = 0; i < m; ++i) {
      na += ga[i] * ga[i];
      nf += gf[i] * gf[i];
    }
    const double scale = std::sqrt(std::max(na, nf));
    if (scale == 0.0) continue;
    for (int i = 0; i < m; ++i) {
      const double rel = std::abs(ga[i] - gf[i]) / scale;
      if (rel > result.max_rel_error) {
        result.max_rel_error = rel;
        result.worst_component = i;
        result.worst_point = xi;
      }
    }
  }
  return result;
}

CorruptedGradientModel::CorruptedGradientModel(
    std::shared_ptr<const ModelFunction> inner, int component, double offset)
    : inner_(std::move(inner)), component_(component), offset_(offset) {
  if (!inner_) throw ArgumentError("corrupted model: null inner model");
  if (component_ < 0 || component_ >= inner_->dim()) {
    throw ArgumentError("corrupted model: component out of range");
  }
}

void CorruptedGradientModel::gradient(std::span<const double> xi,
                                      std::span<double> out) const {
  inner_->gradient(xi, out);
  out[component_] += offset_;
}

}  // namespace dimred::models
