#pragma once

#include <array>
#include <string>
#include <vector>

#include "dimred/ratlin.hpp"

namespace dimred::units {

// SI base units, in the fixed order used by every exponent vector here:
// length, mass, time, current, temperature, amount, luminosity.
inline constexpr int kBaseUnitCount = 7;
inline constexpr std::array<const char*, kBaseUnitCount> kBaseUnitSymbols = {
    "m", "kg", "s", "A", "K", "mol", "cd"};

// The unit function of a quantity: exact rational exponents over the 7 SI
// base units.  The unitless dimension is the zero vector.
class Dimension {
 public:
  Dimension() = default;

  static Dimension base(int index);

  ratlin::Rational& operator[](int i) { return e_[i]; }
  const ratlin::Rational& operator[](int i) const { return e_[i]; }

  Dimension operator*(const Dimension& o) const;
  Dimension operator/(const Dimension& o) const;
  Dimension pow(const ratlin::Rational& r) const;

  bool is_unitless() const;
  bool operator==(const Dimension& o) const { return e_ == o.e_; }

  // Canonical rendering, e.g. "kg*m^-1*s^-2"; "1" for unitless.
  std::string str() const;

 private:
  std::array<ratlin::Rational, kBaseUnitCount> e_{};
};

// Grammar: product of base-unit symbols with optional rational exponents,
// `*` and `/` separators, parentheses for grouping: "m*s^-1", "kg/(m*s)",
// "kg*m^3/(s^3*A^2)".  "1" or the empty string is unitless.
// Throws ParseError naming the offending token and position.
Dimension parse_unit_expression(const std::string& text);

struct QuantitySpec {
  std::string name;
  Dimension dimension;
};

// Input/output bundle as read from a quantity-system file.
struct QuantitySystem {
  std::vector<QuantitySpec> inputs;
  QuantitySpec output;
};

struct DimensionMatrix {
  ratlin::Matrix D;                     // k x m, columns ordered as the inputs
  std::vector<ratlin::Rational> u;      // output exponents over the k rows
  std::vector<std::string> base_units;  // the k retained base units, SI order
  std::vector<std::string> input_names;
  std::string output_name;

  int k() const { return D.rows(); }
  int m() const { return D.cols(); }
};

// Rows are restricted to base units appearing in at least one quantity.
// Throws ArgumentError for zero inputs or duplicate names, DomainError for
// rank(D) < k (degenerate unit system).
DimensionMatrix build_dimension_matrix(const std::vector<QuantitySpec>& inputs,
                                       const QuantitySpec& output);

// Canonical RREF-derived nullspace basis of D (see ratlin::nullspace).
ratlin::Matrix rational_nullspace(const ratlin::Matrix& D);

// Particular solution of D v = u with free variables set to zero.
// Throws DomainError("output units not expressible from inputs") when the
// output's units cannot be formed from the inputs.
std::vector<ratlin::Rational> solve_particular(const DimensionMatrix& dm);

struct PiGroupSet {
  DimensionMatrix dm;
  std::vector<ratlin::Rational> v;  // D v = u
  ratlin::Matrix U;                 // m x n, D U = 0
  // rendered_groups[0] is the unitless output group Pi = y * prod x_i^-v_i;
  // rendered_groups[1..n] are the input groups Pi_j = prod x_i^U(i,j).
  std::vector<std::string> rendered_groups;

  int n() const { return U.cols(); }
};

PiGroupSet pi_groups(const std::vector<QuantitySpec>& inputs, const QuantitySpec& output);

struct VerifyReport {
  bool dv_ok = false;
  bool du_ok = false;
  bool rank_ok = false;
  std::vector<std::string> failures;  // human-readable failing equations

  bool ok() const { return dv_ok && du_ok && rank_ok; }
};

// Exact audit of D v = u, D U = 0, rank(U) = n.  Never throws; failures are
// reported.  The (dm, v, U) overload audits externally supplied factors.
VerifyReport verify_pi_groups(const PiGroupSet& set);
VerifyReport verify_pi_groups(const DimensionMatrix& dm, const std::vector<ratlin::Rational>& v,
                              const ratlin::Matrix& U);

// Product-of-powers rendering used for rendered_groups; exposed for reports.
std::string render_group(const std::vector<std::string>& names,
                         const std::vector<ratlin::Rational>& exponents,
                         const std::string& leading_factor = "");

}  // namespace dimred::units
