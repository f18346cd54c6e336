#include "jetlin/linalg.hpp"

#include <cassert>

#include "jetlin/errors.hpp"

namespace jetlin {

Matrix Matrix::from_rows(std::vector<Vector> rows, std::size_t cols) {
  Matrix m(0, cols);
  for (auto& r : rows) m.append_row(std::move(r));
  return m;
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

void Matrix::append_row(Vector v) {
  if (v.size() != cols_) throw DomainError("row length does not match matrix width");
  rows_.push_back(std::move(v));
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows());
  for (std::size_t r = 0; r < rows(); ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = rows_[r][c];
  return t;
}

bool Matrix::is_zero() const {
  for (const auto& r : rows_)
    for (const auto& x : r)
      if (sgn(x) != 0) return false;
  return true;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw DomainError("matrix shapes do not compose");
  Matrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += a(i, k) * b(k, j);
    }
  return m;
}

Vector operator*(const Matrix& a, const Vector& v) {
  if (a.cols() != v.size()) throw DomainError("matrix and vector shapes differ");
  Vector r(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (sgn(a(i, k)) != 0) r[i] += a(i, k) * v[k];
  return r;
}

Echelon rref(const Matrix& m) {
  std::vector<Vector> rows = m.row_vectors();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational f = rows[i][c];
      for (std::size_t j = c; j < m.cols(); ++j)
        if (sgn(rows[r][j]) != 0) rows[i][j] -= f * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return {Matrix::from_rows(std::move(rows), m.cols()), std::move(pivots)};
}

std::size_t rank(const Matrix& m) { return rref(m).pivots.size(); }

std::vector<Vector> nullspace(const Matrix& m) {
  Echelon e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Vector v(m.cols());
    v[f] = 1;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Solution> solve(const Matrix& m, const Vector& b) {
  if (b.size() != m.rows()) throw DomainError("right-hand side has the wrong length");
  Matrix aug(0, m.cols() + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vector row = m.row(r);
    row.push_back(b[r]);
    aug.append_row(std::move(row));
  }
  Echelon e = rref(aug);
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Solution s{Vector(m.cols()), m.cols() - e.pivots.size()};
  for (std::size_t r = 0; r < e.pivots.size(); ++r) s.particular[e.pivots[r]] = e.reduced(r, m.cols());
  return s;
}

std::vector<Vector> canonical_basis(const std::vector<Vector>& vectors, std::size_t dim) {
  return rref(Matrix::from_rows(vectors, dim)).reduced.row_vectors();
}

bool in_span(const std::vector<Vector>& basis, const Vector& v, std::size_t dim) {
  std::size_t r = rank(Matrix::from_rows(basis, dim));
  std::vector<Vector> ext = basis;
  ext.push_back(v);
  return rank(Matrix::from_rows(std::move(ext), dim)) == r;
}

bool span_contains(const std::vector<Vector>& big, const std::vector<Vector>& small, std::size_t dim) {
  std::size_t r = rank(Matrix::from_rows(big, dim));
  std::vector<Vector> ext = big;
  ext.insert(ext.end(), small.begin(), small.end());
  return rank(Matrix::from_rows(std::move(ext), dim)) == r;
}

bool span_equal(const std::vector<Vector>& a, const std::vector<Vector>& b, std::size_t dim) {
  return canonical_basis(a, dim) == canonical_basis(b, dim);
}

std::string to_string(const Vector& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ", ";
    s += to_string(v[i]);
  }
  return s + "]";
}

}  // namespace jetlin
