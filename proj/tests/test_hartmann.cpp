#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <vector>

#include "dimred/errors.hpp"
#include "dimred/hartmann.hpp"
#include "dimred/parameter_space.hpp"
#include "dimred/rng.hpp"
#include "oracle/reference_values.hpp"

using namespace dimred;
using namespace dimred::models;

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

// Independent 256-bit transcription of the two closed forms.  Guards the
// frozen reference header (generated by a separate mpmath script) against
// transcription slips in either place.
double mpfr_u_avg(double mu, double dp, double eta, double B0, double l) {
  mpfr_t m, e, b, ll, ha, phi, out;
  mpfr_inits2(256, m, e, b, ll, ha, phi, out, (mpfr_ptr)nullptr);
  mpfr_set_d(m, mu, MPFR_RNDN);
  mpfr_set_d(e, eta, MPFR_RNDN);
  mpfr_set_d(b, B0, MPFR_RNDN);
  mpfr_set_d(ll, l, MPFR_RNDN);
  // ha = B0*l/sqrt(eta*mu)
  mpfr_mul(ha, e, m, MPFR_RNDN);
  mpfr_sqrt(ha, ha, MPFR_RNDN);
  mpfr_div(ha, b, ha, MPFR_RNDN);
  mpfr_mul(ha, ha, ll, MPFR_RNDN);
  // phi = 1 - ha*coth(ha)
  mpfr_coth(phi, ha, MPFR_RNDN);
  mpfr_mul(phi, phi, ha, MPFR_RNDN);
  mpfr_ui_sub(phi, 1, phi, MPFR_RNDN);
  // out = -dp * eta / B0^2 * phi
  mpfr_mul(out, b, b, MPFR_RNDN);
  mpfr_div(out, e, out, MPFR_RNDN);
  mpfr_mul_d(out, out, -dp, MPFR_RNDN);
  mpfr_mul(out, out, phi, MPFR_RNDN);
  double r = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(m, e, b, ll, ha, phi, out, (mpfr_ptr)nullptr);
  return r;
}

double mpfr_b_ind(double mu, double dp, double eta, double B0, double l = 1.0,
                  double mu0 = 1.0) {
  mpfr_t m, e, b, ll, w, psi, t, out;
  mpfr_inits2(256, m, e, b, ll, w, psi, t, out, (mpfr_ptr)nullptr);
  mpfr_set_d(m, mu, MPFR_RNDN);
  mpfr_set_d(e, eta, MPFR_RNDN);
  mpfr_set_d(b, B0, MPFR_RNDN);
  mpfr_set_d(ll, l, MPFR_RNDN);
  // w = sqrt(eta*mu)
  mpfr_mul(w, e, m, MPFR_RNDN);
  mpfr_sqrt(w, w, MPFR_RNDN);
  // psi = 1 - (2w/(B0*l)) * tanh(B0*l/(2w))
  mpfr_mul(t, b, ll, MPFR_RNDN);  // t = B0*l
  mpfr_div(psi, t, w, MPFR_RNDN);
  mpfr_div_ui(psi, psi, 2, MPFR_RNDN);  // B0*l/(2w)
  mpfr_tanh(psi, psi, MPFR_RNDN);
  mpfr_mul(psi, psi, w, MPFR_RNDN);
  mpfr_mul_ui(psi, psi, 2, MPFR_RNDN);
  mpfr_div(psi, psi, t, MPFR_RNDN);
  mpfr_ui_sub(psi, 1, psi, MPFR_RNDN);
  // out = dp * l*mu0/(2*B0) * psi
  mpfr_mul_d(out, ll, mu0, MPFR_RNDN);
  mpfr_mul_d(out, out, dp, MPFR_RNDN);
  mpfr_div(out, out, b, MPFR_RNDN);
  mpfr_div_ui(out, out, 2, MPFR_RNDN);
  mpfr_mul(out, out, psi, MPFR_RNDN);
  double r = mpfr_get_d(out, MPFR_RNDN);
  mpfr_clears(m, e, b, ll, w, psi, t, out, (mpfr_ptr)nullptr);
  return r;
}

}  // namespace

TEST_SUITE("hartmann") {

TEST_CASE("closed forms match the frozen high-precision oracle") {
  CHECK(rel_err(hartmann_u_avg(0.1, 2.0, 1.0, 1.0, 0.5), oracle::kP1UAvg) < 1e-15);
  CHECK(rel_err(hartmann_b_ind(0.1, 2.0, 1.0, 1.0, 0.5), oracle::kP1BInd) < 1e-15);
  CHECK(rel_err(hartmann_u_avg(0.07, 3.5, 2.25, 0.8, 0.73), oracle::kP2UAvg) < 1e-15);
  CHECK(rel_err(hartmann_b_ind(0.07, 3.5, 2.25, 0.8, 0.73), oracle::kP2BInd) < 1e-15);
}

TEST_CASE("frozen oracle constants agree with a live MPFR transcription") {
  // The frozen header is a correctly rounded 36-digit decimal of a 60-digit
  // mpmath run; the MPFR recomputation is this library's second, independent
  // transcription of the same formulas.  Both must round to the same double
  // neighbourhood.
  CHECK(rel_err(mpfr_u_avg(0.1, 1.0, 1.0, 0.5, 1.0), oracle::kP1UAvg) < 1.2e-16);
  CHECK(rel_err(mpfr_b_ind(0.1, 1.0, 1.0, 0.5, 1.0), oracle::kP1BInd) < 1.2e-16);
  CHECK(rel_err(mpfr_u_avg(0.07, 2.25, 0.8, 0.73, 1.0), oracle::kP2UAvg) < 1.2e-16);
  CHECK(rel_err(mpfr_b_ind(0.07, 2.25, 0.8, 0.73, 1.0), oracle::kP2BInd) < 1.2e-16);

  // Centre of the Hartmann box: sqrt(low*high) per coordinate.
  const double mu_c = std::sqrt(0.05 * 0.2), dp_c = std::sqrt(0.5 * 3.0),
               eta_c = std::sqrt(0.5 * 3.0), b0_c = std::sqrt(0.1 * 1.0);
  CHECK(rel_err(mpfr_u_avg(mu_c, dp_c, eta_c, b0_c, 1.0), oracle::kCentreUAvg) < 1e-15);
  CHECK(rel_err(mpfr_b_ind(mu_c, dp_c, eta_c, b0_c, 1.0, 1.0), oracle::kCentreBInd) < 1e-15);
}

TEST_CASE("density independence") {
  for (double rho : {0.01, 1.0, 3.7, 5000.0}) {
    CHECK(hartmann_u_avg(0.1, rho, 1.0, 1.0, 0.5) ==
          hartmann_u_avg(0.1, 2.0, 1.0, 1.0, 0.5));
    CHECK(hartmann_b_ind(0.1, rho, 1.0, 1.0, 0.5) ==
          hartmann_b_ind(0.1, 2.0, 1.0, 1.0, 0.5));
  }
}

TEST_CASE("small-Hartmann-number limits") {
  // Deep series regime (Ha ~ 3e-6): matches the frozen oracle to double
  // precision and the leading-order limit to well under 1e-9.
  const double u = hartmann_u_avg(0.1, 2.0, 1.0, 1.0, 1e-6);
  const double b = hartmann_b_ind(0.1, 2.0, 1.0, 1.0, 1e-6);
  CHECK(rel_err(u, oracle::kP3UAvg) < 1e-14);
  CHECK(rel_err(b, oracle::kP3BInd) < 1e-14);
  CHECK(rel_err(u, oracle::kP3ULimit) < 1e-9);
  CHECK(rel_err(b, oracle::kP3BLimit) < 1e-9);

  // Convergence order >= 2 in Ha: the relative distance to the limit scales
  // as Ha^2 (hence B0^2), so shrinking B0 tenfold shrinks it a hundredfold.
  auto u_err = [](double B0) {
    return std::abs(hartmann_u_avg(0.1, 2.0, 1.0, 1.0, B0) / (10.0 / 3.0) - 1.0);
  };
  auto b_err = [](double B0) {
    return std::abs(hartmann_b_ind(0.1, 2.0, 1.0, 1.0, B0) / (B0 / 2.4) - 1.0);
  };
  CHECK(u_err(1e-5) / u_err(1e-6) == doctest::Approx(100.0).epsilon(0.02));
  CHECK(b_err(3e-5) / b_err(3e-6) == doctest::Approx(100.0).epsilon(0.02));
}

TEST_CASE("series / direct-form crossover is seamless") {
  // phi and psi must be smooth across the 1e-4 switch point.  Just above it
  // the direct forms carry ~1e-16 absolute cancellation noise on values of
  // order h^2, i.e. a few 1e-8 relative; the tolerance covers that plus the
  // genuine O(h^2) deviation from the leading term.
  for (double h : {0.9e-4, 0.99e-4, 1.0e-4, 1.01e-4, 1.1e-4}) {
    CHECK(rel_err(hartmann_phi(h), -h * h / 3.0) < 5e-7);
    CHECK(rel_err(hartmann_psi(h), h * h / 12.0) < 5e-7);
  }
  // Large argument: coth -> 1, tanh -> 1 without overflow.
  CHECK(rel_err(hartmann_phi(800.0), 1.0 - 800.0) < 1e-15);
  CHECK(rel_err(hartmann_psi(800.0), 1.0 - 2.0 / 800.0) < 1e-15);
  CHECK(std::isfinite(hartmann_phi(1e6)));
  CHECK(std::isfinite(hartmann_psi(1e6)));
}

TEST_CASE("domain errors for nonpositive physical inputs") {
  CHECK_THROWS_AS(hartmann_u_avg(0.0, 2.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(hartmann_u_avg(0.1, -2.0, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(hartmann_u_avg(0.1, 2.0, 1.0, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(hartmann_u_avg(0.1, 2.0, 1.0, 1.0, -0.5), DomainError);
  CHECK_THROWS_AS(hartmann_u_avg(0.1, 2.0, 1.0, 1.0, 0.5, 0.0), DomainError);
  CHECK_THROWS_AS(hartmann_b_ind(0.1, 2.0, 1.0, 1.0, 0.5, 1.0, 0.0), DomainError);
  // dp0dx may take either sign (it is a signed gradient).
  CHECK_NOTHROW(hartmann_u_avg(0.1, 2.0, -1.0, 1.0, 0.5));
}

TEST_CASE("dimensionless forms") {
  CHECK(rel_err(dimensionless_u_avg(oracle::kP1Re, oracle::kP1Ha, oracle::kP1DPstar),
                oracle::kP1UStar) < 1e-15);
  CHECK(rel_err(dimensionless_b_ind(oracle::kP1Re, oracle::kP1Ha, oracle::kP1DPstar,
                                    oracle::kP1Mu0star),
                oracle::kP1BStar) < 1e-15);

  CHECK_THROWS_AS(dimensionless_u_avg(1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(dimensionless_b_ind(1.0, 0.0, 1.0, 1.0), DomainError);
  CHECK_THROWS_AS(dimensionless_u_avg(0.0, 1.0, 1.0), DomainError);

  // Re enters linearly.
  CHECK(rel_err(dimensionless_u_avg(40.0, 2.0, 0.3),
                2.0 * dimensionless_u_avg(20.0, 2.0, 0.3)) < 1e-15);

  // u* and B* depend on (Re, dP*) only through the product Re*dP*.
  for (double a : {0.5, 2.0, 10.0}) {
    CHECK(rel_err(dimensionless_u_avg(a * 20.0, 2.0, 0.3 / a),
                  dimensionless_u_avg(20.0, 2.0, 0.3)) < 1e-12);
    CHECK(rel_err(dimensionless_b_ind(a * 20.0, 2.0, 0.3 / a, 1.7),
                  dimensionless_b_ind(20.0, 2.0, 0.3, 1.7)) < 1e-12);
  }
}

TEST_CASE("dimensional / dimensionless equivalence at random points") {
  // v * u*(Re(v), Ha, dP*(v)) = u_avg and
  // (sqrt(eta*mu)/(2 l)) * B*(Re(v), Ha, dP*(v), mu0*(v)) = B_ind
  // for any characteristic velocity v > 0.
  ParameterSpace space = models::hartmann_space();
  CounterRng rng(20240817, 900);
  const double l = 1.0, mu0 = 1.0;
  for (int p = 0; p < 100; ++p) {
    std::vector<double> xi(5);
    for (int d = 0; d < 5; ++d) xi[d] = rng.uniform_sym(p * 6 + d);
    std::vector<double> x = space.physical_from_normalized(xi);
    const double mu = x[0], rho = x[1], dp = x[2], eta = x[3], B0 = x[4];
    const double v = 0.5 + 1.5 * rng.uniform01(p * 6 + 5);

    const double Re = rho * v * l / mu;
    const double Ha = B0 * l / std::sqrt(eta * mu);
    const double dPs = l * dp / (rho * v * v);
    const double m0s = mu0 * v * l / eta;

    CHECK(rel_err(v * dimensionless_u_avg(Re, Ha, dPs),
                  hartmann_u_avg(mu, rho, dp, eta, B0, l)) < 1e-12);
    CHECK(rel_err(std::sqrt(eta * mu) / (2.0 * l) *
                      dimensionless_b_ind(Re, Ha, dPs, m0s),
                  hartmann_b_ind(mu, rho, dp, eta, B0, l, mu0)) < 1e-12);
  }
}

TEST_CASE("mhd_pi_values") {
  MhdPiValues one = mhd_pi_values(1.0, 1.0, 0.7, 1.0, 1.0);
  CHECK(one.Re == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(one.Ha == doctest::Approx(1.0).epsilon(1e-15));

  MhdPiValues p1 = mhd_pi_values(0.1, 2.0, 1.0, 1.0, 0.5);
  CHECK(rel_err(p1.Re, oracle::kP1Re) < 1e-15);
  CHECK(rel_err(p1.Ha, oracle::kP1Ha) < 1e-15);
  CHECK(rel_err(p1.Pi3, oracle::kP1DPstar) < 1e-15);  // default p = l*|dp0dx|

  // Explicit characteristic pressure/velocity overrides.
  MhdPiValues s = mhd_pi_values(0.1, 2.0, 1.0, 1.0, 0.5, 1.0, 2.0, 4.0);
  CHECK(s.Re == doctest::Approx(2.0 * 2.0 * 1.0 / 0.1).epsilon(1e-15));
  CHECK(s.Pi3 == doctest::Approx(4.0 / (2.0 * 4.0)).epsilon(1e-15));

  CHECK_THROWS_AS(mhd_pi_values(0.0, 2.0, 1.0, 1.0, 0.5), DomainError);
}

TEST_CASE("model wrapper: centre values and gradients match the oracle") {
  ParameterSpace space = models::hartmann_space();
  HartmannModel u(HartmannModel::Qoi::kUAvg, space);
  HartmannModel b(HartmannModel::Qoi::kBInd, space);
  CHECK(u.dim() == 5);
  CHECK(u.name() == "hartmann_u_avg");
  CHECK(b.name() == "hartmann_b_ind");

  const std::vector<double> centre(5, 0.0);
  CHECK(rel_err(u.value(centre), oracle::kCentreUAvg) < 1e-14);
  CHECK(rel_err(b.value(centre), oracle::kCentreBInd) < 1e-14);

  std::vector<double> gu = u.gradient(centre);
  std::vector<double> gb = b.gradient(centre);
  for (int i = 0; i < 5; ++i) {
    if (i == 1) continue;
    CHECK(rel_err(gu[i], oracle::kCentreGradU[i]) < 1e-13);
    CHECK(rel_err(gb[i], oracle::kCentreGradB[i]) < 1e-13);
  }
  // Increasing the pressure gradient increases u_avg.
  CHECK(gu[2] > 0.0);
}

TEST_CASE("model wrapper: rho gradient component is exactly zero") {
  ParameterSpace space = models::hartmann_space();
  HartmannModel u(HartmannModel::Qoi::kUAvg, space);
  HartmannModel b(HartmannModel::Qoi::kBInd, space);
  CounterRng rng(77, 901);
  for (int p = 0; p < 50; ++p) {
    std::vector<double> xi(5);
    for (int d = 0; d < 5; ++d) xi[d] = rng.uniform_sym(p * 5 + d);
    CHECK(u.gradient(xi)[1] == 0.0);
    CHECK(b.gradient(xi)[1] == 0.0);
  }
}

TEST_CASE("model wrapper: space validation") {
  CHECK_THROWS_AS(HartmannModel(HartmannModel::Qoi::kUAvg,
                                ParameterSpace({{"a", 1.0, 2.0}})),
                  ArgumentError);
  CHECK_THROWS_AS(
      HartmannModel(HartmannModel::Qoi::kUAvg,
                    ParameterSpace({{"mu", 0.05, 0.2},
                                    {"dp0dx", 0.5, 3.0},
                                    {"rho", 1.0, 5.0},  // wrong order
                                    {"eta", 0.5, 3.0},
                                    {"B0", 0.1, 1.0}})),
      ArgumentError);

  // Constants flow through: doubling l quadruples Ha^2 (changes the value).
  ParameterSpace l2({{"mu", 0.05, 0.2},
                     {"rho", 1.0, 5.0},
                     {"dp0dx", 0.5, 3.0},
                     {"eta", 0.5, 3.0},
                     {"B0", 0.1, 1.0}},
                    {{"l", 2.0}, {"mu0", 1.0}});
  HartmannModel u2(HartmannModel::Qoi::kUAvg, l2);
  const std::vector<double> centre(5, 0.0);
  const double mu_c = std::sqrt(0.05 * 0.2), dp_c = std::sqrt(0.5 * 3.0),
               eta_c = std::sqrt(0.5 * 3.0), b0_c = std::sqrt(0.1 * 1.0);
  CHECK(rel_err(u2.value(centre),
                hartmann_u_avg(mu_c, 1.0, dp_c, eta_c, b0_c, 2.0)) < 1e-14);
}

}  // TEST_SUITE
