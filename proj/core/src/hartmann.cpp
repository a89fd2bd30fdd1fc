#include "dimred/hartmann.hpp"

#include <array>
#include <cmath>

#include "dimred/errors.hpp"

namespace dimred::models {
namespace {

constexpr double kSeriesThreshold = 1e-4;

// coth(h) for h > 0.  expm1 overflows to +inf past 2h ~ 709, where 2/inf = 0
// gives the correct limit coth -> 1.
double coth(double h) { return 1.0 + 2.0 / std::expm1(2.0 * h); }

// tanh(h/2) through expm1 so small arguments keep full relative accuracy.
double tanh_half(double h) {
  if (h > 350.0) return 1.0;
  const double e = std::expm1(h);
  return e / (e + 2.0);
}

void require_positive(double value, const char* name) {
  if (!(value > 0.0)) {
    throw DomainError(std::string("hartmann: parameter '") + name +
                      "' must be positive");
  }
}

double hartmann_number(double mu, double eta, double B0, double l) {
  return B0 * l / std::sqrt(eta * mu);
}

}  // namespace

double hartmann_phi(double h) {
  if (h < kSeriesThreshold) {
    const double h2 = h * h;
    return h2 * (-1.0 / 3.0 +
                 h2 * (1.0 / 45.0 + h2 * (-2.0 / 945.0 + h2 * (1.0 / 4725.0))));
  }
  return 1.0 - h * coth(h);
}

double hartmann_psi(double h) {
  if (h < kSeriesThreshold) {
    const double h2 = h * h;
    return h2 * (1.0 / 12.0 +
                 h2 * (-1.0 / 120.0 +
                       h2 * (17.0 / 20160.0 + h2 * (-31.0 / 362880.0))));
  }
  return 1.0 - (2.0 / h) * tanh_half(h);
}

double hartmann_phi_prime(double h) {
  if (h < kSeriesThreshold) {
    const double h2 = h * h;
    return h * (-2.0 / 3.0 +
                h2 * (4.0 / 45.0 + h2 * (-4.0 / 315.0 + h2 * (8.0 / 4725.0))));
  }
  const double s = std::sinh(h);
  return -coth(h) + h / (s * s);
}

double hartmann_psi_prime(double h) {
  if (h < kSeriesThreshold) {
    const double h2 = h * h;
    return h * (1.0 / 6.0 +
                h2 * (-1.0 / 30.0 +
                      h2 * (17.0 / 3360.0 + h2 * (-31.0 / 45360.0))));
  }
  const double c = std::cosh(0.5 * h);
  return (2.0 / (h * h)) * tanh_half(h) - 1.0 / (h * c * c);
}

double hartmann_u_avg(double mu, double rho, double dp0dx, double eta, double B0,
                      double l) {
  // The closed form is linear in dp0dx, so the pressure gradient may carry
  // either sign (it only reverses the flow); every other parameter must be
  // positive for Ha and the prefactors to make sense.
  require_positive(mu, "mu");
  require_positive(rho, "rho");
  require_positive(eta, "eta");
  require_positive(B0, "B0");
  require_positive(l, "l");
  if (!std::isfinite(dp0dx))
    throw DomainError("hartmann: parameter 'dp0dx' must be finite");
  const double ha = hartmann_number(mu, eta, B0, l);
  return -dp0dx * (eta / (B0 * B0)) * hartmann_phi(ha);
}

double hartmann_b_ind(double mu, double rho, double dp0dx, double eta, double B0,
                      double l, double mu0) {
  require_positive(mu, "mu");
  require_positive(rho, "rho");
  require_positive(eta, "eta");
  require_positive(B0, "B0");
  require_positive(l, "l");
  require_positive(mu0, "mu0");
  if (!std::isfinite(dp0dx))
    throw DomainError("hartmann: parameter 'dp0dx' must be finite");
  const double ha = hartmann_number(mu, eta, B0, l);
  return dp0dx * (l * mu0 / (2.0 * B0)) * hartmann_psi(ha);
}

double dimensionless_u_avg(double Re, double Ha, double dPstar) {
  require_positive(Re, "Re");
  if (!(Ha > 0.0)) {
    throw DomainError(
        "hartmann: Ha must be positive (Ha = 0 is a removable singularity "
        "that is not evaluated)");
  }
  return -dPstar * (Re / (Ha * Ha)) * hartmann_phi(Ha);
}

double dimensionless_b_ind(double Re, double Ha, double dPstar, double mu0star) {
  require_positive(Re, "Re");
  if (!(Ha > 0.0)) {
    throw DomainError(
        "hartmann: Ha must be positive (Ha = 0 is a removable singularity "
        "that is not evaluated)");
  }
  return dPstar * (Re / Ha) * mu0star * hartmann_psi(Ha);
}

MhdPiValues mhd_pi_values(double mu, double rho, double dp0dx, double eta,
                          double B0, double l, double v, double p) {
  require_positive(mu, "mu");
  require_positive(rho, "rho");
  require_positive(dp0dx, "dp0dx");
  require_positive(eta, "eta");
  require_positive(B0, "B0");
  require_positive(l, "l");
  require_positive(v, "v");
  if (p < 0.0) p = l * std::abs(dp0dx);
  require_positive(p, "p");
  MhdPiValues out;
  out.Re = rho * v * l / mu;
  out.Ha = hartmann_number(mu, eta, B0, l);
  out.Pi3 = p / (rho * v * v);
  return out;
}

HartmannModel::HartmannModel(Qoi qoi, ParameterSpace space)
    : qoi_(qoi), space_(std::move(space)) {
  static const std::array<const char*, 5> kExpected = {"mu", "rho", "dp0dx",
                                                       "eta", "B0"};
  if (space_.m() != 5) {
    throw ArgumentError("hartmann model: parameter space must have exactly 5 "
                        "parameters (mu, rho, dp0dx, eta, B0)");
  }
  for (int i = 0; i < 5; ++i) {
    if (space_.params()[i].name != kExpected[i]) {
      throw ArgumentError(
          std::string("hartmann model: parameter ") + std::to_string(i) +
          " must be named '" + kExpected[i] + "', got '" +
          space_.params()[i].name + "'");
    }
  }
  l_ = space_.constant_or("l", 1.0);
  mu0_ = space_.constant_or("mu0", 1.0);
  require_positive(l_, "l");
  require_positive(mu0_, "mu0");
}

std::string HartmannModel::name() const {
  return qoi_ == Qoi::kUAvg ? "hartmann_u_avg" : "hartmann_b_ind";
}

double HartmannModel::value(std::span<const double> xi) const {
  if (static_cast<int>(xi.size()) != 5) {
    throw ArgumentError("hartmann model: expected a 5-vector");
  }
  std::array<double, 5> x;
  space_.physical_from_normalized(xi, x);
  return qoi_ == Qoi::kUAvg
             ? hartmann_u_avg(x[0], x[1], x[2], x[3], x[4], l_)
             : hartmann_b_ind(x[0], x[1], x[2], x[3], x[4], l_, mu0_);
}

void HartmannModel::gradient(std::span<const double> xi,
                             std::span<double> out) const {
  if (static_cast<int>(xi.size()) != 5 || static_cast<int>(out.size()) != 5) {
    throw ArgumentError("hartmann model: expected 5-vectors");
  }
  std::array<double, 5> x;
  space_.physical_from_normalized(xi, x);
  const double mu = x[0], dp = x[2], eta = x[3], B0 = x[4];
  const double ha = hartmann_number(mu, eta, B0, l_);

  // Partials w.r.t. the natural logs of the physical inputs; the chain factor
  // (log_high - log_low)/2 converts to the normalized coordinates.
  std::array<double, 5> dlog;
  if (qoi_ == Qoi::kUAvg) {
    const double pre = dp * eta / (B0 * B0);
    const double phi = hartmann_phi(ha);
    const double dphi = hartmann_phi_prime(ha);
    dlog[0] = pre * 0.5 * ha * dphi;
    dlog[1] = 0.0;
    dlog[2] = -pre * phi;
    dlog[3] = -pre * (phi - 0.5 * ha * dphi);
    dlog[4] = -pre * (ha * dphi - 2.0 * phi);
  } else {
    const double pre = dp * l_ * mu0_ / (2.0 * B0);
    const double psi = hartmann_psi(ha);
    const double dpsi = hartmann_psi_prime(ha);
    dlog[0] = -pre * 0.5 * ha * dpsi;
    dlog[1] = 0.0;
    dlog[2] = pre * psi;
    dlog[3] = dlog[0];
    dlog[4] = pre * (ha * dpsi - psi);
  }
  for (int i = 0; i < 5; ++i) out[i] = dlog[i] * space_.log_halfwidth(i);
  out[1] = 0.0;  // rho-nullity holds exactly, not just up to rounding
}

}  // namespace dimred::models
