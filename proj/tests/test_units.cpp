#include <doctest.h>

#include <string>
#include <vector>

#include "dimred/errors.hpp"
#include "dimred/units.hpp"

using namespace dimred;
using units::Dimension;
using units::QuantitySpec;
using ratlin::Matrix;
using ratlin::Rational;

namespace {

QuantitySpec q(const std::string& name, const std::string& expr) {
  return {name, units::parse_unit_expression(expr)};
}

// The seven MHD inputs in declaration order: l, v, mu, rho, p, eta, B0.
std::vector<QuantitySpec> mhd_inputs() {
  return {q("l", "m"),
          q("v", "m/s"),
          q("mu", "kg/(m*s)"),
          q("rho", "kg/m^3"),
          q("p", "kg/(m*s^2)"),
          q("eta", "kg*m^3/(s^3*A^2)"),
          q("B0", "kg/(s^2*A)")};
}

QuantitySpec mhd_output() { return q("u_avg", "m/s"); }

// Exponent vectors (over the inputs above) of Re = rho*v*l/mu,
// Ha = B0*l/sqrt(eta*mu), and Pi3 = p/(rho*v^2): a known basis of null(D).
Matrix known_null_basis() {
  Matrix b(7, 3);
  const int L = 0, V = 1, MU = 2, RHO = 3, P = 4, ETA = 5, B0 = 6;
  b(L, 0) = 1; b(V, 0) = 1; b(MU, 0) = -1; b(RHO, 0) = 1;
  b(L, 1) = 1; b(MU, 1) = Rational(-1, 2); b(ETA, 1) = Rational(-1, 2); b(B0, 1) = 1;
  b(V, 2) = -2; b(RHO, 2) = -1; b(P, 2) = 1;
  return b;
}

}  // namespace

TEST_SUITE("units") {

TEST_CASE("parse_unit_expression") {
  Dimension v = units::parse_unit_expression("m*s^-1");
  CHECK(v[0] == 1);   // m
  CHECK(v[2] == -1);  // s
  CHECK(v[1] == 0);

  Dimension eta = units::parse_unit_expression("kg*m^3/(s^3*A^2)");
  CHECK(eta[0] == 3);
  CHECK(eta[1] == 1);
  CHECK(eta[2] == -3);
  CHECK(eta[3] == -2);

  CHECK(units::parse_unit_expression("1").is_unitless());
  CHECK(units::parse_unit_expression("").is_unitless());

  Dimension half = units::parse_unit_expression("m^(1/2)");
  CHECK(half[0] == Rational(1, 2));

  // Same expression via division of grouped terms.
  CHECK(units::parse_unit_expression("kg/(m*s)") ==
        units::parse_unit_expression("kg*m^-1*s^-1"));

  CHECK_THROWS_AS(units::parse_unit_expression("foo"), ParseError);
  CHECK_THROWS_AS(units::parse_unit_expression("m^"), ParseError);
  CHECK_THROWS_AS(units::parse_unit_expression("m^(1/2"), ParseError);
  CHECK_THROWS_AS(units::parse_unit_expression("m*(s"), ParseError);
  CHECK_THROWS_WITH_AS(units::parse_unit_expression("m@s"),
                       doctest::Contains("position"), ParseError);
}

TEST_CASE("build_dimension_matrix: MHD system") {
  units::DimensionMatrix dm =
      units::build_dimension_matrix(mhd_inputs(), mhd_output());
  CHECK(dm.k() == 4);
  CHECK(dm.m() == 7);
  REQUIRE(dm.base_units.size() == 4);
  CHECK(dm.base_units[0] == "m");
  CHECK(dm.base_units[1] == "kg");
  CHECK(dm.base_units[2] == "s");
  CHECK(dm.base_units[3] == "A");

  const int expected[4][7] = {{1, 1, -1, -3, -1, 3, 0},
                              {0, 0, 1, 1, 1, 1, 1},
                              {0, -1, -1, 0, -2, -3, -2},
                              {0, 0, 0, 0, 0, -2, -1}};
  // Rows in SI retained order: m, kg, s, A.
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 7; ++c) CHECK(dm.D(r, c) == expected[r][c]);

  // Output u_avg = m/s.
  CHECK(dm.u[0] == 1);
  CHECK(dm.u[1] == 0);
  CHECK(dm.u[2] == -1);
  CHECK(dm.u[3] == 0);
}

TEST_CASE("build_dimension_matrix: trivial and degenerate cases") {
  units::DimensionMatrix dm =
      units::build_dimension_matrix({q("a", "m")}, q("y", "m"));
  CHECK(dm.k() == 1);
  CHECK(dm.D(0, 0) == 1);
  CHECK(dm.u[0] == 1);

  // All unitless: k = 0, D is 0 x m.
  units::DimensionMatrix dm0 =
      units::build_dimension_matrix({q("a", "1"), q("b", "1")}, q("y", "1"));
  CHECK(dm0.k() == 0);
  CHECK(dm0.m() == 2);

  // Linearly dependent base-unit rows: degenerate unit system.
  CHECK_THROWS_WITH_AS(
      units::build_dimension_matrix({q("a", "m*s"), q("b", "m^2*s^2")},
                                    q("y", "1")),
      doctest::Contains("degenerate"), DomainError);

  CHECK_THROWS_AS(units::build_dimension_matrix({}, q("y", "m")),
                  ArgumentError);
  CHECK_THROWS_AS(
      units::build_dimension_matrix({q("a", "m"), q("a", "s")}, q("y", "m")),
      ArgumentError);
  CHECK_THROWS_AS(units::build_dimension_matrix({q("a", "m")}, q("a", "m")),
                  ArgumentError);
}

TEST_CASE("rational_nullspace spans the known MHD basis") {
  units::DimensionMatrix dm =
      units::build_dimension_matrix(mhd_inputs(), mhd_output());
  Matrix U = units::rational_nullspace(dm.D);
  REQUIRE(U.cols() == 3);

  // D * U = 0 exactly.
  Matrix prod = dm.D * U;
  for (int r = 0; r < prod.rows(); ++r)
    for (int c = 0; c < prod.cols(); ++c) CHECK(prod(r, c) == 0);

  // Span equality with the Re/Ha/Pi3 exponent vectors: appending them must
  // not raise the rank.
  Matrix joint = Matrix::hcat(U, known_null_basis());
  CHECK(ratlin::rank(joint) == 3);
  CHECK(ratlin::rank(known_null_basis()) == 3);

  // Identity matrix: empty nullspace.
  CHECK(units::rational_nullspace(Matrix::identity(3)).cols() == 0);
}

TEST_CASE("solve_particular for the output group") {
  units::DimensionMatrix dm =
      units::build_dimension_matrix(mhd_inputs(), mhd_output());
  std::vector<Rational> v = units::solve_particular(dm);
  std::vector<Rational> dv = dm.D * v;
  for (size_t i = 0; i < dv.size(); ++i) CHECK(dv[i] == dm.u[i]);

  // Inexpressible output.
  CHECK_THROWS_WITH_AS(
      units::solve_particular(
          units::build_dimension_matrix({q("a", "m")}, q("y", "s"))),
      doctest::Contains("not expressible"), DomainError);
}

TEST_CASE("pi_groups: MHD system") {
  units::PiGroupSet pi = units::pi_groups(mhd_inputs(), mhd_output());
  CHECK(pi.n() == 3);
  CHECK(pi.rendered_groups.size() == 4);

  units::VerifyReport audit = units::verify_pi_groups(pi);
  CHECK(audit.ok());
  CHECK(audit.failures.empty());

  // Span equality against the textbook Re/Ha/Pi3 basis.
  CHECK(ratlin::rank(Matrix::hcat(pi.U, known_null_basis())) == 3);
}

TEST_CASE("pi_groups: pendulum forces a unique group") {
  std::vector<QuantitySpec> inputs = {q("l", "m"), q("g", "m/s^2")};
  units::PiGroupSet pi = units::pi_groups(inputs, q("T", "s"));
  CHECK(pi.n() == 0);
  // T = Pi * l^(1/2) * g^(-1/2), i.e. Pi = T * l^(-1/2) * g^(1/2).
  REQUIRE(pi.v.size() == 2);
  CHECK(pi.v[0] == Rational(1, 2));
  CHECK(pi.v[1] == Rational(-1, 2));
  CHECK(units::verify_pi_groups(pi).ok());
}

TEST_CASE("pi_groups: all-unitless identity reduction") {
  units::PiGroupSet pi =
      units::pi_groups({q("a", "1"), q("b", "1")}, q("y", "1"));
  CHECK(pi.n() == 2);
  // v = 0: the output group is y itself; U = I: each input is its own group.
  for (const auto& vi : pi.v) CHECK(vi == 0);
  CHECK(pi.U == Matrix::identity(2));
}

TEST_CASE("permutation equivariance") {
  std::vector<QuantitySpec> inputs = mhd_inputs();
  units::PiGroupSet base = units::pi_groups(inputs, mhd_output());

  // Reverse the declaration order.
  std::vector<QuantitySpec> rev(inputs.rbegin(), inputs.rend());
  units::PiGroupSet perm = units::pi_groups(rev, mhd_output());
  CHECK(perm.n() == 3);

  // Un-permute the rows of the permuted U; the span must be unchanged.
  Matrix unperm(7, perm.U.cols());
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < perm.U.cols(); ++c) unperm(6 - r, c) = perm.U(r, c);
  CHECK(ratlin::rank(Matrix::hcat(base.U, unperm)) == 3);
}

TEST_CASE("verify_pi_groups flags a perturbed factorization") {
  units::PiGroupSet pi = units::pi_groups(mhd_inputs(), mhd_output());
  std::vector<Rational> bad_v = pi.v;
  bad_v[0] += 1;
  units::VerifyReport audit = units::verify_pi_groups(pi.dm, bad_v, pi.U);
  CHECK(!audit.ok());
  CHECK(!audit.dv_ok);
  CHECK(audit.du_ok);
  CHECK(audit.rank_ok);
  CHECK(!audit.failures.empty());

  // Empty U with full-column-rank D passes.
  units::DimensionMatrix dm1 =
      units::build_dimension_matrix({q("a", "m")}, q("y", "m"));
  units::VerifyReport a1 =
      units::verify_pi_groups(dm1, {Rational(1)}, Matrix(1, 0));
  CHECK(a1.ok());
}

TEST_CASE("rendered groups are unitless") {
  std::vector<QuantitySpec> inputs = mhd_inputs();
  units::PiGroupSet pi = units::pi_groups(inputs, mhd_output());
  // Sum of exponent * dimension over each input group must vanish.
  for (int j = 0; j < pi.n(); ++j) {
    Dimension total;
    for (int i = 0; i < 7; ++i)
      total = total * inputs[i].dimension.pow(pi.U(i, j));
    CHECK(total.is_unitless());
  }
  // Output group: dim(y) * prod dim(x_i)^(-v_i) = 1.
  Dimension out = mhd_output().dimension;
  for (int i = 0; i < 7; ++i)
    out = out * inputs[i].dimension.pow(-pi.v[i]);
  CHECK(out.is_unitless());
}

}  // TEST_SUITE
