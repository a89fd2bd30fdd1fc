#include "dimred/units.hpp"

#include <cctype>
#include <set>
#include <sstream>

#include "dimred/errors.hpp"

namespace dimred::units {

Dimension Dimension::base(int index) {
  Dimension d;
  d.e_[index] = 1;
  return d;
}

Dimension Dimension::operator*(const Dimension& o) const {
  Dimension r;
  for (int i = 0; i < kBaseUnitCount; ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

Dimension Dimension::operator/(const Dimension& o) const {
  Dimension r;
  for (int i = 0; i < kBaseUnitCount; ++i) r.e_[i] = e_[i] - o.e_[i];
  return r;
}

Dimension Dimension::pow(const ratlin::Rational& p) const {
  Dimension r;
  for (int i = 0; i < kBaseUnitCount; ++i) r.e_[i] = e_[i] * p;
  return r;
}

bool Dimension::is_unitless() const {
  for (const auto& e : e_)
    if (e != 0) return false;
  return true;
}

std::string Dimension::str() const {
  std::vector<std::string> names(kBaseUnitSymbols.begin(), kBaseUnitSymbols.end());
  std::vector<ratlin::Rational> exps(e_.begin(), e_.end());
  std::string s = render_group(names, exps);
  return s;
}

namespace {

// Recursive-descent parser for the unit grammar.
class UnitParser {
 public:
  explicit UnitParser(const std::string& text) : text_(text) {}

  Dimension parse() {
    skip_ws();
    if (at_end()) return Dimension{};  // empty string is unitless
    Dimension d = expression();
    skip_ws();
    if (!at_end()) fail("unexpected trailing input");
    return d;
  }

 private:
  Dimension expression() {
    Dimension d = term();
    for (;;) {
      skip_ws();
      if (peek() == '*') {
        ++pos_;
        d = d * term();
      } else if (peek() == '/') {
        ++pos_;
        d = d / term();
      } else {
        return d;
      }
    }
  }

  Dimension term() {
    skip_ws();
    if (peek() == '(') {
      size_t open = pos_++;
      Dimension d = expression();
      skip_ws();
      if (peek() != ')') fail("unmatched '('", open);
      ++pos_;
      return maybe_pow(d);
    }
    if (peek() == '1') {
      ++pos_;
      return maybe_pow(Dimension{});
    }
    return maybe_pow(symbol());
  }

  Dimension symbol() {
    skip_ws();
    size_t start = pos_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected unit symbol");
    std::string sym = text_.substr(start, pos_ - start);
    for (int i = 0; i < kBaseUnitCount; ++i)
      if (sym == kBaseUnitSymbols[i]) return Dimension::base(i);
    fail("unknown unit symbol '" + sym + "'", start);
    return {};  // unreachable
  }

  Dimension maybe_pow(Dimension d) {
    skip_ws();
    if (peek() != '^') return d;
    ++pos_;
    return d.pow(exponent());
  }

  ratlin::Rational exponent() {
    skip_ws();
    size_t start = pos_;
    bool parenthesized = peek() == '(';
    if (parenthesized) ++pos_;
    size_t lit_start = pos_;
    if (peek() == '-' || peek() == '+') ++pos_;
    // A '/' may only be part of the exponent inside parentheses, e.g.
    // "m^(1/2)"; a bare "m^3/s" divides by the next term instead.
    while (!at_end() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
            (parenthesized && text_[pos_] == '/')))
      ++pos_;
    std::string lit = text_.substr(lit_start, pos_ - lit_start);
    if (lit.empty()) fail("expected exponent after '^'", start);
    if (parenthesized) {
      if (peek() != ')') fail("unmatched '(' in exponent", start);
      ++pos_;
    }
    try {
      return ratlin::parse_rational(lit);
    } catch (const ParseError&) {
      fail("malformed exponent '" + lit + "'", lit_start);
    }
    return {};  // unreachable
  }

  char peek() const { return at_end() ? '\0' : text_[pos_]; }
  bool at_end() const { return pos_ >= text_.size(); }
  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
  [[noreturn]] void fail(const std::string& msg, size_t at) const {
    throw ParseError("unit expression '" + text_ + "': " + msg + " at position " +
                     std::to_string(at));
  }

  const std::string& text_;
  size_t pos_ = 0;
};

}  // namespace

Dimension parse_unit_expression(const std::string& text) {
  return UnitParser(text).parse();
}

DimensionMatrix build_dimension_matrix(const std::vector<QuantitySpec>& inputs,
                                       const QuantitySpec& output) {
  if (inputs.empty()) throw ArgumentError("dimension matrix requires at least one input");
  std::set<std::string> seen;
  for (const auto& q : inputs)
    if (!seen.insert(q.name).second)
      throw ArgumentError("duplicate quantity name '" + q.name + "'");
  if (seen.count(output.name))
    throw ArgumentError("duplicate quantity name '" + output.name + "'");

  // Retain only base units used by at least one quantity, in SI order.
  std::array<bool, kBaseUnitCount> active{};
  for (int b = 0; b < kBaseUnitCount; ++b) {
    if (output.dimension[b] != 0) active[b] = true;
    for (const auto& q : inputs)
      if (q.dimension[b] != 0) active[b] = true;
  }

  DimensionMatrix dm;
  for (int b = 0; b < kBaseUnitCount; ++b)
    if (active[b]) dm.base_units.push_back(kBaseUnitSymbols[b]);

  const int k = static_cast<int>(dm.base_units.size());
  const int m = static_cast<int>(inputs.size());
  dm.D = ratlin::Matrix(k, m);
  dm.u.resize(k);
  int row = 0;
  for (int b = 0; b < kBaseUnitCount; ++b) {
    if (!active[b]) continue;
    for (int c = 0; c < m; ++c) dm.D(row, c) = inputs[c].dimension[b];
    dm.u[row] = output.dimension[b];
    ++row;
  }
  for (const auto& q : inputs) dm.input_names.push_back(q.name);
  dm.output_name = output.name;

  // An output exponent pattern outside the column space of D (most commonly a
  // base unit used only by the output, which appears here as a zero row) is an
  // inexpressibility problem, not a degeneracy problem; diagnose it as such
  // before the full-row-rank audit.
  ratlin::Matrix u_col(k, 1);
  for (int r = 0; r < k; ++r) u_col(r, 0) = dm.u[r];
  const int rank_d = ratlin::rank(dm.D);
  if (ratlin::rank(ratlin::Matrix::hcat(dm.D, u_col)) > rank_d)
    throw DomainError("output units not expressible from inputs");
  if (rank_d < k)
    throw DomainError("degenerate unit system: dimension matrix has rank < " + std::to_string(k));
  return dm;
}

ratlin::Matrix rational_nullspace(const ratlin::Matrix& D) {
  return ratlin::nullspace(D);
}

std::vector<ratlin::Rational> solve_particular(const DimensionMatrix& dm) {
  try {
    return ratlin::solve_particular(dm.D, dm.u);
  } catch (const DomainError&) {
    throw DomainError("output units not expressible from inputs");
  }
}

std::string render_group(const std::vector<std::string>& names,
                         const std::vector<ratlin::Rational>& exponents,
                         const std::string& leading_factor) {
  std::ostringstream out;
  bool first = true;
  if (!leading_factor.empty()) {
    out << leading_factor;
    first = false;
  }
  for (size_t i = 0; i < names.size(); ++i) {
    if (exponents[i] == 0) continue;
    if (!first) out << " * ";
    out << names[i];
    if (exponents[i] != 1) out << "^" << ratlin::format_rational(exponents[i]);
    first = false;
  }
  if (first) out << "1";
  return out.str();
}

PiGroupSet pi_groups(const std::vector<QuantitySpec>& inputs, const QuantitySpec& output) {
  PiGroupSet set;
  set.dm = build_dimension_matrix(inputs, output);
  set.v = solve_particular(set.dm);
  set.U = rational_nullspace(set.dm.D);

  // Pi = y * prod x_i^-v_i.
  std::vector<ratlin::Rational> neg_v(set.v.size());
  for (size_t i = 0; i < set.v.size(); ++i) neg_v[i] = -set.v[i];
  set.rendered_groups.push_back(render_group(set.dm.input_names, neg_v, set.dm.output_name));
  for (int j = 0; j < set.U.cols(); ++j)
    set.rendered_groups.push_back(render_group(set.dm.input_names, set.U.column(j)));
  return set;
}

VerifyReport verify_pi_groups(const DimensionMatrix& dm, const std::vector<ratlin::Rational>& v,
                              const ratlin::Matrix& U) {
  VerifyReport rep;
  rep.dv_ok = true;
  rep.du_ok = true;

  const auto dv = dm.D * v;
  for (size_t i = 0; i < dv.size(); ++i) {
    if (dv[i] != dm.u[i]) {
      rep.dv_ok = false;
      rep.failures.push_back("(D v)[" + std::to_string(i) + "] = " +
                             ratlin::format_rational(dv[i]) + " != u[" + std::to_string(i) +
                             "] = " + ratlin::format_rational(dm.u[i]));
    }
  }

  const auto du = dm.D * U;
  for (int r = 0; r < du.rows(); ++r)
    for (int c = 0; c < du.cols(); ++c)
      if (du(r, c) != 0) {
        rep.du_ok = false;
        rep.failures.push_back("(D U)[" + std::to_string(r) + "," + std::to_string(c) +
                               "] = " + ratlin::format_rational(du(r, c)) + " != 0");
      }

  const int expected_n = dm.m() - ratlin::rank(dm.D);
  rep.rank_ok = U.cols() == expected_n && ratlin::rank(U) == expected_n;
  if (!rep.rank_ok)
    rep.failures.push_back("rank(U) = " + std::to_string(ratlin::rank(U)) + ", columns = " +
                           std::to_string(U.cols()) + ", expected n = " +
                           std::to_string(expected_n));
  return rep;
}

VerifyReport verify_pi_groups(const PiGroupSet& set) {
  return verify_pi_groups(set.dm, set.v, set.U);
}

}  // namespace dimred::units
