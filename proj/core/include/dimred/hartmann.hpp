#pragma once

#include <memory>
#include <span>
#include <string>

#include "dimred/model.hpp"
#include "dimred/parameter_space.hpp"

namespace dimred::models {

// Bracketed factors of the two closed forms and their derivatives.
//
//   phi(h) = 1 - h*coth(h)          (u_avg factor, <= 0, -> -h^2/3 as h->0)
//   psi(h) = 1 - (2/h)*tanh(h/2)    (b_ind factor, >= 0, ->  h^2/12 as h->0)
//
// coth/tanh are evaluated through expm1 so nothing blows up for small h; below
// h = 1e-4 both switch to 4-term even series, at which point the truncation
// error is under 1e-16 relative while the direct forms would cancel
// catastrophically.
double hartmann_phi(double h);
double hartmann_psi(double h);
double hartmann_phi_prime(double h);
double hartmann_psi_prime(double h);

// Average flow velocity across the channel:
//   u_avg = -(dp0dx) * (eta/B0^2) * phi(Ha),  Ha = B0*l/sqrt(eta*mu).
// rho is accepted and ignored (the formula does not depend on it).
double hartmann_u_avg(double mu, double rho, double dp0dx, double eta, double B0,
                      double l = 1.0);

// Induced magnetic field:
//   B_ind = (dp0dx) * (l*mu0/(2*B0)) * psi(Ha).
double hartmann_b_ind(double mu, double rho, double dp0dx, double eta, double B0,
                      double l = 1.0, double mu0 = 1.0);

// Unitless forms.  Ha = 0 is a removable singularity we refuse to evaluate.
//   u*_avg = -dPstar * (Re/Ha^2) * phi(Ha)
//   B*_ind =  dPstar * (Re/Ha) * mu0star * psi(Ha)
double dimensionless_u_avg(double Re, double Ha, double dPstar);
double dimensionless_b_ind(double Re, double Ha, double dPstar, double mu0star);

// Pi-group values for reporting.  The characteristic velocity and pressure are
// not part of the Hartmann formulas, so they default to v = 1 and
// p = l*|dp0dx|; both can be overridden.
struct MhdPiValues {
  double Re = 0.0;
  double Ha = 0.0;
  double Pi3 = 0.0;  // p / (rho v^2)
};
MhdPiValues mhd_pi_values(double mu, double rho, double dp0dx, double eta,
                          double B0, double l = 1.0, double v = 1.0,
                          double p = -1.0);  // p < 0 -> use l*|dp0dx|

// ModelFunction wrapper over the closed forms with exact analytic gradients in
// normalized log coordinates.  The space must expose exactly the parameters
// (mu, rho, dp0dx, eta, B0) in that order; l and mu0 are read from its
// constants (defaulting to 1).
class HartmannModel final : public ModelFunction {
 public:
  enum class Qoi { kUAvg, kBInd };

  HartmannModel(Qoi qoi, ParameterSpace space);

  const ParameterSpace& space() const override { return space_; }
  std::string name() const override;
  double value(std::span<const double> xi) const override;
  using ModelFunction::gradient;
  void gradient(std::span<const double> xi, std::span<double> out) const override;

  Qoi qoi() const { return qoi_; }

 private:
  Qoi qoi_;
  ParameterSpace space_;
  double l_;
  double mu0_;
};

}  // namespace dimred::models
