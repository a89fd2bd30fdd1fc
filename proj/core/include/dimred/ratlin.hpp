#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <string>
#include <vector>

namespace dimred::ratlin {

// Exact rational scalar.  GMP supplies the arbitrary-precision integer
// arithmetic; everything built on top of it here is exact by construction.
using Rational = mpq_class;

// Accepts "p" or "p/q" with optional leading '-'.  Throws ParseError on
// malformed text or zero denominator.  The result is canonicalized.
Rational parse_rational(const std::string& text);

// Canonical rendering: "p" when the denominator is 1, else "p/q".
std::string format_rational(const Rational& r);

// Dense matrix of rationals, row-major.  Sized for dimensional-analysis
// workloads (tens of rows/columns), not for large-scale linear algebra.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols) {}
  Matrix(std::initializer_list<std::initializer_list<Rational>> rows);

  static Matrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int r, int c) { return data_[static_cast<size_t>(r) * cols_ + c]; }
  const Rational& operator()(int r, int c) const {
    return data_[static_cast<size_t>(r) * cols_ + c];
  }

  std::vector<Rational> column(int c) const;
  Matrix transposed() const;

  // Horizontal concatenation [a | b]; row counts must agree.
  static Matrix hcat(const Matrix& a, const Matrix& b);

  bool operator==(const Matrix& other) const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<Rational> operator*(const Matrix& a, const std::vector<Rational>& x);

struct RrefResult {
  Matrix rref;
  std::vector<int> pivot_cols;
};

// Gauss-Jordan elimination with exact arithmetic.  The reduced row echelon
// form of a rational matrix is unique, so every quantity derived from it
// (rank, nullspace basis, particular solutions) is canonical.
RrefResult reduced_row_echelon(Matrix a);

int rank(const Matrix& a);

// Canonical nullspace basis as matrix columns, one per free column of the
// RREF in ascending column order: the basis vector for free column j has
// entry 1 at j, -rref(i, j) at the i-th pivot column, 0 elsewhere.
// A full-rank matrix yields a matrix with zero columns.
Matrix nullspace(const Matrix& a);

// Particular solution of a x = b with every free variable set to zero.
// Throws DomainError when the system is inconsistent.
std::vector<Rational> solve_particular(const Matrix& a, const std::vector<Rational>& b);

}  // namespace dimred::ratlin
