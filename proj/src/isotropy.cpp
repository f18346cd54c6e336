#include "jetlin/isotropy.hpp"

#include "jetlin/errors.hpp"

namespace jetlin {

namespace {

void require_exact(const JetPoint& theta) {
  if (!theta.is_exact()) throw DomainError("isotropy computations need an exact rational jet");
}

// Position of X^i_tau among the unknowns of orders min..max.
std::size_t unknown_index(int i, MultiIndex tau, int min_order, int max_order) {
  std::size_t per_component = VectorFieldJet::vector_size(max_order, min_order) / 2;
  std::size_t offset = min_order > 0 ? MultiIndex::count_up_to(min_order - 1) : 0;
  return static_cast<std::size_t>(i - 1) * per_component + tau.position() - offset;
}

std::vector<Vector> coordinates_in(const std::vector<Vector>& basis, const std::vector<Vector>& vs, std::size_t dim) {
  Matrix cols = Matrix::from_rows(basis, dim).transposed();
  std::vector<Vector> out;
  for (const Vector& v : vs) {
    auto s = solve(cols, v);
    if (!s) throw DomainError("vector " + to_string(v) + " is not in the subspace");
    out.push_back(s->particular);
  }
  return out;
}

}  // namespace

Subspace make_subspace(int min_order, int order, const Point& base, const std::vector<Vector>& spanning) {
  Subspace s{min_order, order, base, {}};
  s.basis = canonical_basis(spanning, s.ambient_dimension());
  return s;
}

VectorFieldJet Subspace::element(std::size_t n) const {
  return VectorFieldJet::from_vector(basis.at(n), order, base, min_order);
}

bool Subspace::contains(const Vector& v) const { return in_span(basis, v, ambient_dimension()); }

bool Subspace::contains(const VectorFieldJet& X) const {
  if (X.order() != order) return false;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(min_order - 1))
      if (!X.at(i, t).is_zero()) return false;
  return contains(X.to_vector(min_order));
}

bool Subspace::contains(const Subspace& other) const {
  if (other.order != order) throw DomainError("subspaces of different orders");
  if (other.min_order < min_order) {
    for (std::size_t n = 0; n < other.dimension(); ++n)
      if (!contains(other.element(n))) return false;
    return true;
  }
  return span_contains(basis, other.widened(min_order).basis, ambient_dimension());
}

Subspace Subspace::projected(int r) const {
  if (r > order || r < min_order) throw DomainError("projection order out of range");
  std::vector<Vector> vs;
  for (std::size_t n = 0; n < basis.size(); ++n) vs.push_back(element(n).truncated(r).to_vector(min_order));
  return make_subspace(min_order, r, base, vs);
}

Subspace Subspace::widened(int min) const {
  if (min > min_order) throw DomainError("cannot narrow a subspace");
  std::vector<Vector> vs;
  for (std::size_t n = 0; n < basis.size(); ++n) vs.push_back(element(n).to_vector(min));
  return make_subspace(min, order, base, vs);
}

LinearSystem psi_system(const JetPoint& theta, int depth, int min_order) {
  int top = depth + 2;
  LinearSystem sys;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(top))
      if (t.order() >= min_order) sys.unknowns.push_back(x_name(i, t));
  sys.matrix = Matrix(0, sys.unknowns.size());
  for (MultiIndex s : MultiIndex::up_to(depth))
    for (int i = 0; i < 4; ++i) {
      Vector row(sys.unknowns.size());
      for (const LinearTerm& t : total_derivative_psi_form(i, s, theta)) {
        if (t.tau.order() < min_order) continue;
        if (t.tau.order() > top) throw InternalInconsistencyError("psi form exceeds the expected order");
        row[unknown_index(t.component, t.tau, min_order, top)] += t.coefficient.exact();
      }
      sys.matrix.append_row(std::move(row));
    }
  return sys;
}

Subspace isotropy_algebra(const JetPoint& theta_k) {
  require_exact(theta_k);
  int k = theta_k.order();
  // with X_p = 0 the coordinates of order k + 1 drop out
  JetPoint ext(k + 1, theta_k.base());
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(k)) ext.u(i, s) = theta_k.u(i, s);
  LinearSystem sys = psi_system(ext, k, 1);
  return make_subspace(1, k + 2, theta_k.base(), nullspace(sys.matrix));
}

Subspace isotropy_space(const JetPoint& theta_k1) {
  require_exact(theta_k1);
  int k = theta_k1.order() - 1;
  if (k < 0) throw DomainError("isotropy space needs a jet of order >= 1");
  LinearSystem sys = psi_system(theta_k1, k, 0);
  return make_subspace(0, k + 2, theta_k1.base(), nullspace(sys.matrix));
}

std::size_t orbit_dimension(const JetPoint& theta_k) {
  require_exact(theta_k);
  int k = theta_k.order();
  JetPoint ext(k + 1, theta_k.base());
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(k)) ext.u(i, s) = theta_k.u(i, s);
  std::size_t n = VectorFieldJet::vector_size(k + 2);
  std::vector<Vector> rows;
  for (std::size_t c = 0; c < n; ++c) {
    Vector e(n);
    e[c] = 1;
    std::vector<Scalar> col = lift_field(VectorFieldJet::from_vector(e, k + 2, theta_k.base()), ext).flatten();
    Vector row;
    for (const Scalar& x : col) row.push_back(x.exact());
    rows.push_back(std::move(row));
  }
  return rank(Matrix::from_rows(std::move(rows), theta_k.total_dimension()));
}

Vector generator_e1() {
  // X^1_11 = 2, X^2_12 = 1
  Vector v(6);
  v[0] = 2;
  v[4] = 1;
  return v;
}

Vector generator_e2() {
  // X^1_12 = 1, X^2_22 = 2
  Vector v(6);
  v[1] = 1;
  v[5] = 2;
  return v;
}

Subspace symbol_g(const JetPoint& theta0) {
  Subspace algebra = isotropy_algebra(project(theta0, 0));
  // elements with vanishing first-order part
  Matrix first(0, algebra.dimension());
  std::size_t per = algebra.ambient_dimension() / 2;
  for (int i = 0; i < 2; ++i)
    for (std::size_t c = 0; c < 2; ++c) {
      Vector row;
      for (const Vector& b : algebra.basis) row.push_back(b[static_cast<std::size_t>(i) * per + c]);
      first.append_row(std::move(row));
    }
  std::vector<Vector> grade2;
  for (const Vector& comb : nullspace(first)) {
    Vector v(6);
    for (std::size_t n = 0; n < comb.size(); ++n)
      for (int i = 0; i < 2; ++i)
        for (std::size_t c = 0; c < 3; ++c)
          v[static_cast<std::size_t>(i) * 3 + c] += comb[n] * algebra.basis[n][static_cast<std::size_t>(i) * per + 2 + c];
    grade2.push_back(std::move(v));
  }
  std::vector<Vector> gens{generator_e1(), generator_e2()};
  if (!span_equal(grade2, gens, 6))
    throw InternalInconsistencyError("symbol of the isotropy algebra is not spanned by e1, e2");
  Subspace g{2, 2, theta0.base(), gens};
  return g;
}

Subspace full_grade(int d) {
  std::size_t n = VectorFieldJet::vector_size(d, d);
  std::vector<Vector> basis;
  for (std::size_t c = 0; c < n; ++c) {
    Vector v(n);
    v[c] = 1;
    basis.push_back(std::move(v));
  }
  return Subspace{d, d, {Scalar(0), Scalar(0)}, basis};
}

Vector grade_derivative(const Vector& x, int d, int j) {
  if (d < 1) throw DomainError("grade must be positive");
  std::size_t in = static_cast<std::size_t>(d + 1), out = static_cast<std::size_t>(d);
  if (x.size() != 2 * in) throw DomainError("grade vector has the wrong length");
  Vector r(2 * out);
  for (std::size_t i = 0; i < 2; ++i)
    for (MultiIndex t : MultiIndex::of_order(d - 1)) {
      MultiIndex tj = t.append(j);
      r[i * out + static_cast<std::size_t>(t.r2)] = x[i * in + static_cast<std::size_t>(tj.r2)];
    }
  return r;
}

Subspace prolong(const Subspace& g) {
  if (g.min_order != g.order) throw DomainError("prolongation needs a homogeneous subspace");
  int d = g.order;
  std::size_t dim = g.ambient_dimension(), up = VectorFieldJet::vector_size(d + 1, d + 1);
  // annihilator of span(g)
  std::vector<Vector> ann = nullspace(Matrix::from_rows(g.basis, dim));
  Matrix conditions(0, up);
  for (int j = 1; j <= 2; ++j)
    for (const Vector& a : ann) {
      Vector row(up);
      for (std::size_t c = 0; c < up; ++c) {
        Vector e(up);
        e[c] = 1;
        Vector dj = grade_derivative(e, d + 1, j);
        for (std::size_t r = 0; r < dim; ++r) row[c] += a[r] * dj[r];
      }
      conditions.append_row(std::move(row));
    }
  return make_subspace(d + 1, d + 1, g.base, nullspace(conditions));
}

SpencerComplex spencer_complex(const Subspace& gd, const Subspace& gd1, const Subspace& gd2) {
  int d = gd.order;
  if (gd.min_order != d || gd1.min_order != d - 1 || gd1.order != d - 1 || gd2.min_order != d - 2 ||
      gd2.order != d - 2 || d < 3)
    throw DomainError("Spencer complex needs homogeneous pieces of grades d, d-1, d-2 with d >= 3");
  std::size_t n0 = gd.dimension(), n1 = gd1.dimension(), n2 = gd2.dimension();
  std::size_t a1 = gd1.ambient_dimension(), a2 = gd2.ambient_dimension();
  for (const Vector& x : gd.basis)
    for (int j = 1; j <= 2; ++j)
      if (!gd1.contains(grade_derivative(x, d, j))) throw DomainError("[V, g_d] is not contained in g_{d-1}");
  for (const Vector& x : gd1.basis)
    for (int j = 1; j <= 2; ++j)
      if (!gd2.contains(grade_derivative(x, d - 1, j))) throw DomainError("[V, g_{d-1}] is not contained in g_{d-2}");

  SpencerComplex sc;
  sc.top_grade = d;
  sc.dims = {n0, 2 * n1, n2};
  // xi in g_{d-1} (x) V* is (xi(d1), xi(d2)) in basis coordinates
  sc.d0 = Matrix(2 * n1, n0);
  for (std::size_t c = 0; c < n0; ++c)
    for (int j = 1; j <= 2; ++j) {
      Vector w = coordinates_in(gd1.basis, {grade_derivative(gd.basis[c], d, j)}, a1)[0];
      for (std::size_t r = 0; r < n1; ++r) sc.d0(static_cast<std::size_t>(j - 1) * n1 + r, c) = w[r];
    }
  // (d xi)(d1, d2) = [d1, xi(d2)] - [d2, xi(d1)]
  sc.d1 = Matrix(n2, 2 * n1);
  for (std::size_t c = 0; c < n1; ++c) {
    Vector from2 = coordinates_in(gd2.basis, {grade_derivative(gd1.basis[c], d - 1, 1)}, a2)[0];
    Vector from1 = coordinates_in(gd2.basis, {grade_derivative(gd1.basis[c], d - 1, 2)}, a2)[0];
    for (std::size_t r = 0; r < n2; ++r) {
      sc.d1(r, c) = -from1[r];
      sc.d1(r, n1 + c) = from2[r];
    }
  }
  sc.d2 = Matrix(0, n2);
  std::size_t r0 = rank(sc.d0), r1 = rank(sc.d1);
  sc.cohomology = {n0 - r0, 2 * n1 - r1 - r0, n2 - r1};
  return sc;
}

SpencerComplex symbol_spencer_complex(const JetPoint& theta0) {
  Subspace g = symbol_g(theta0);
  return spencer_complex(prolong(g), g, full_grade(1));
}

}  // namespace jetlin
