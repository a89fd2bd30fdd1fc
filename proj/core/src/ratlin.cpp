#include "dimred/ratlin.hpp"

#include <cctype>
#include <stdexcept>
#include <utility>

#include "dimred/errors.hpp"

namespace dimred::ratlin {

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty rational literal");
  // Stricter than mpq's own parser: exactly [-]digits[/digits].
  size_t i = 0;
  if (text[i] == '-' || text[i] == '+') ++i;
  auto digits = [&](size_t& pos) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos > start;
  };
  if (!digits(i)) throw ParseError("malformed rational literal '" + text + "'");
  if (i < text.size()) {
    if (text[i] != '/') throw ParseError("malformed rational literal '" + text + "'");
    ++i;
    if (!digits(i) || i != text.size())
      throw ParseError("malformed rational literal '" + text + "'");
  }
  Rational r;
  if (r.set_str(text, 10) != 0) throw ParseError("malformed rational literal '" + text + "'");
  if (r.get_den() == 0) throw ParseError("zero denominator in rational literal '" + text + "'");
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_str();
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = static_cast<int>(rows.size());
  cols_ = rows_ == 0 ? 0 : static_cast<int>(rows.begin()->size());
  data_.reserve(static_cast<size_t>(rows_) * cols_);
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != cols_)
      throw ArgumentError("ragged initializer for rational matrix");
    for (const auto& v : row) data_.push_back(v);
  }
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Rational> Matrix::column(int c) const {
  std::vector<Rational> out(rows_);
  for (int r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::hcat(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows()) throw ArgumentError("hcat: row counts differ");
  Matrix m(a.rows(), a.cols() + b.cols());
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) m(r, c) = a(r, c);
    for (int c = 0; c < b.cols(); ++c) m(r, a.cols() + c) = b(r, c);
  }
  return m;
}

bool Matrix::operator==(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (size_t i = 0; i < data_.size(); ++i)
    if (data_[i] != other.data_[i]) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw ArgumentError("matrix product: shape mismatch");
  Matrix m(a.rows(), b.cols());
  for (int r = 0; r < a.rows(); ++r)
    for (int k = 0; k < a.cols(); ++k) {
      if (a(r, k) == 0) continue;
      for (int c = 0; c < b.cols(); ++c) m(r, c) += a(r, k) * b(k, c);
    }
  return m;
}

std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& x) {
  if (a.cols() != static_cast<int>(x.size()))
    throw ArgumentError("matrix-vector product: shape mismatch");
  std::vector<Rational> y(a.rows());
  for (int r = 0; r < a.rows(); ++r)
    for (int c = 0; c < a.cols(); ++c)
      if (a(r, c) != 0) y[r] += a(r, c) * x[c];
  return y;
}

RrefResult reduced_row_echelon(Matrix a) {
  std::vector<int> pivots;
  int lead = 0;
  for (int col = 0; col < a.cols() && lead < a.rows(); ++col) {
    int sel = -1;
    for (int r = lead; r < a.rows(); ++r) {
      if (a(r, col) != 0) {
        sel = r;
        break;
      }
    }
    if (sel < 0) continue;
    if (sel != lead)
      for (int c = 0; c < a.cols(); ++c) std::swap(a(sel, c), a(lead, c));
    Rational inv = a(lead, col);
    for (int c = 0; c < a.cols(); ++c) a(lead, c) /= inv;
    for (int r = 0; r < a.rows(); ++r) {
      if (r == lead || a(r, col) == 0) continue;
      Rational f = a(r, col);
      for (int c = 0; c < a.cols(); ++c) a(r, c) -= f * a(lead, c);
    }
    pivots.push_back(col);
    ++lead;
  }
  return {std::move(a), std::move(pivots)};
}

int rank(const Matrix& a) {
  return static_cast<int>(reduced_row_echelon(a).pivot_cols.size());
}

Matrix nullspace(const Matrix& a) {
  auto [rref, pivots] = reduced_row_echelon(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (int p : pivots) is_pivot[p] = true;

  std::vector<int> free_cols;
  for (int c = 0; c < a.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  Matrix basis(a.cols(), static_cast<int>(free_cols.size()));
  for (size_t j = 0; j < free_cols.size(); ++j) {
    int fc = free_cols[j];
    basis(fc, static_cast<int>(j)) = 1;
    for (size_t i = 0; i < pivots.size(); ++i)
      basis(pivots[i], static_cast<int>(j)) = -rref(static_cast<int>(i), fc);
  }
  return basis;
}

std::vector<Rational> solve_particular(const Matrix& a, const std::vector<Rational>& b) {
  if (a.rows() != static_cast<int>(b.size()))
    throw ArgumentError("solve_particular: rhs length != row count");
  Matrix aug(a.rows(), a.cols() + 1);
  for (int r = 0; r < a.rows(); ++r) {
    for (int c = 0; c < a.cols(); ++c) aug(r, c) = a(r, c);
    aug(r, a.cols()) = b[r];
  }
  auto [rref, pivots] = reduced_row_echelon(std::move(aug));
  // A pivot in the appended column means a row reduced to [0 ... 0 | 1].
  for (int p : pivots)
    if (p == a.cols()) throw DomainError("linear system is inconsistent");

  std::vector<Rational> x(a.cols());
  for (size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = rref(static_cast<int>(i), a.cols());
  return x;
}

}  // namespace dimred::ratlin
