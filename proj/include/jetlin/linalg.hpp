#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "jetlin/scalar.hpp"

namespace jetlin {

using Vector = std::vector<Rational>;

/// Dense matrix over Q, row-major. The column count is stored explicitly so
/// that empty matrices still know their shape.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, Vector(cols)) {}
  static Matrix from_rows(std::vector<Vector> rows, std::size_t cols);
  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t r, std::size_t c) { return rows_[r][c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return rows_[r][c]; }
  const Vector& row(std::size_t r) const { return rows_[r]; }
  const std::vector<Vector>& row_vectors() const { return rows_; }
  void append_row(Vector v);

  Matrix transposed() const;
  bool is_zero() const;
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend bool operator==(const Matrix& a, const Matrix& b) { return a.cols_ == b.cols_ && a.rows_ == b.rows_; }

 private:
  std::size_t cols_ = 0;
  std::vector<Vector> rows_;
};

Vector operator*(const Matrix& a, const Vector& v);

struct Echelon {
  Matrix reduced;  // nonzero rows only
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form by Gauss-Jordan elimination over Q.
Echelon rref(const Matrix& m);
std::size_t rank(const Matrix& m);

/// Basis of {x : m x = 0}, one vector per free column in increasing order,
/// with that free coordinate 1 and the other free coordinates 0.
std::vector<Vector> nullspace(const Matrix& m);

struct Solution {
  Vector particular;  // free coordinates set to 0
  std::size_t nullity;
};
/// Solves m x = b; nullopt if inconsistent.
std::optional<Solution> solve(const Matrix& m, const Vector& b);

/// Row space in reduced echelon form; a canonical basis of span(vectors).
std::vector<Vector> canonical_basis(const std::vector<Vector>& vectors, std::size_t dim);
bool in_span(const std::vector<Vector>& basis, const Vector& v, std::size_t dim);
bool span_contains(const std::vector<Vector>& big, const std::vector<Vector>& small, std::size_t dim);
bool span_equal(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim);

std::string to_string(const Vector& v);

}  // namespace jetlin
