#include "jetlin/fieldlift.hpp"

#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "jetlin/errors.hpp"
#include "jetlin/eval.hpp"

namespace jetlin {

VectorFieldJet::VectorFieldJet(int order, Point base) : order_(order), base_(std::move(base)) {
  if (order < 0) throw DomainError("negative jet order");
  for (auto& c : c_) c.assign(MultiIndex::count_up_to(order), Scalar(0));
}

VectorFieldJet VectorFieldJet::of(const Expr& X1, const Expr& X2, const Point& p, int order) {
  return from_series(taylor_expand(X1, p, order), taylor_expand(X2, p, order), p);
}

ScalarSeries VectorFieldJet::series(int i) const {
  ScalarSeries s(order_);
  for (MultiIndex t : MultiIndex::up_to(order_)) s.coeff(t.r1, t.r2) = at(i, t) / Scalar(t.factorial_weight());
  return s;
}

VectorFieldJet VectorFieldJet::from_series(const ScalarSeries& s1, const ScalarSeries& s2, const Point& base) {
  VectorFieldJet X(std::min(s1.order(), s2.order()), base);
  for (MultiIndex t : MultiIndex::up_to(X.order())) {
    X.at(1, t) = s1.coeff(t.r1, t.r2) * Scalar(t.factorial_weight());
    X.at(2, t) = s2.coeff(t.r1, t.r2) * Scalar(t.factorial_weight());
  }
  return X;
}

VectorFieldJet VectorFieldJet::truncated(int order) const {
  if (order > order_) throw DomainError("cannot truncate a vector field jet upwards");
  VectorFieldJet X(order, base_);
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(order)) X.at(i, t) = at(i, t);
  return X;
}

bool VectorFieldJet::is_exact() const {
  for (const auto& c : c_)
    for (const auto& x : c)
      if (!x.is_exact()) return false;
  return base_[0].is_exact() && base_[1].is_exact();
}

std::size_t VectorFieldJet::vector_size(int order, int min_order) {
  return 2 * (MultiIndex::count_up_to(order) - (min_order > 0 ? MultiIndex::count_up_to(min_order - 1) : 0));
}

std::vector<Rational> VectorFieldJet::to_vector(int min_order) const {
  std::vector<Rational> v;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(order_))
      if (t.order() >= min_order) v.push_back(at(i, t).exact());
  return v;
}

VectorFieldJet VectorFieldJet::from_vector(const std::vector<Rational>& v, int order, const Point& base, int min_order) {
  if (v.size() != vector_size(order, min_order)) throw DomainError("coefficient vector has the wrong length");
  VectorFieldJet X(order, base);
  std::size_t n = 0;
  for (int i = 1; i <= 2; ++i)
    for (MultiIndex t : MultiIndex::up_to(order))
      if (t.order() >= min_order) X.at(i, t) = Scalar(v[n++]);
  return X;
}

VectorFieldJet bracket(const VectorFieldJet& X, const VectorFieldJet& Y) {
  if (!(X.base() == Y.base())) throw DomainError("vector field jets have different base points");
  int m = std::min(X.order(), Y.order());
  if (m < 1) throw DomainError("bracket needs first-order jets");
  std::array<ScalarSeries, 2> xs{X.series(1).truncated(m), X.series(2).truncated(m)};
  std::array<ScalarSeries, 2> ys{Y.series(1).truncated(m), Y.series(2).truncated(m)};
  std::array<ScalarSeries, 2> r;
  for (std::size_t i = 0; i < 2; ++i)
    r[i] = xs[0] * ys[i].derivative(1) + xs[1] * ys[i].derivative(2) - ys[0] * xs[i].derivative(1) -
           ys[1] * xs[i].derivative(2);
  return VectorFieldJet::from_series(r[0], r[1], X.base());
}

namespace {

struct JetVar {
  char kind;  // 'u' or 'X'
  int index;
  MultiIndex sigma;
};

JetVar parse_jet_var(const std::string& name) {
  JetVar v{name.at(0), name.at(1) - '0', {}};
  for (std::size_t k = 3; k < name.size(); ++k) v.sigma = v.sigma.append(name[k] - '0');
  return v;
}

const JetVar& jet_var(VarId id) {
  static std::shared_mutex mu;
  static std::unordered_map<VarId, JetVar> cache;
  {
    std::shared_lock lock(mu);
    auto it = cache.find(id);
    if (it != cache.end()) return it->second;
  }
  JetVar v = parse_jet_var(VarTable::name(id));
  std::unique_lock lock(mu);
  return cache.emplace(id, v).first->second;
}

Poly var(const std::string& name) { return Poly::variable(name); }
Poly u(int i, std::string_view s = "") { return var("u" + std::to_string(i) + (s.empty() ? "" : "_" + std::string(s))); }
Poly X(int i, std::string_view s = "") { return var("X" + std::to_string(i) + (s.empty() ? "" : "_" + std::string(s))); }

// D_j on polynomials in the jet variables: every u^i_sigma and X^i_tau
// picks up the index j. Nothing depends explicitly on x.
Poly total_derivative(const Poly& p, int j) {
  Poly r;
  for (VarId v : p.variables()) {
    const JetVar& jv = jet_var(v);
    std::string name = (jv.kind == 'u' ? u_name(jv.index, jv.sigma.append(j)) : x_name(jv.index, jv.sigma.append(j)));
    r += p.derivative(v) * Poly::variable(name);
  }
  return r;
}

struct FormTerm {
  int component;
  MultiIndex tau;
  Poly coefficient;
};

using Key = std::pair<int, std::size_t>;

std::mutex& cache_mutex() {
  static std::mutex mu;
  return mu;
}

const std::vector<FormTerm>& psi_form(int i, MultiIndex sigma) {
  static std::map<Key, std::vector<FormTerm>> cache;
  Key key{i, sigma.position()};
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const Poly& p = total_derivative_psi_poly(i, sigma);
  std::vector<FormTerm> form;
  for (VarId v : p.variables()) {
    const JetVar& jv = jet_var(v);
    if (jv.kind != 'X') continue;
    form.push_back({jv.index, jv.sigma, p.derivative(v)});
  }
  std::sort(form.begin(), form.end(), [](const FormTerm& a, const FormTerm& b) {
    return std::make_pair(a.component, a.tau.position()) < std::make_pair(b.component, b.tau.position());
  });
  std::lock_guard lock(cache_mutex());
  return cache.emplace(key, std::move(form)).first->second;
}

Scalar eval_at_jet(const Poly& p, const JetPoint& theta) {
  return p.evaluate([&](VarId v) {
    const JetVar& jv = jet_var(v);
    if (jv.kind != 'u' || jv.sigma.order() > theta.order()) throw DomainError("jet of insufficient order");
    return theta.u(jv.index, jv.sigma);
  });
}

}  // namespace

const std::array<Poly, 4>& psi_polynomials() {
  static const std::array<Poly, 4> psi = [] {
    Poly two(2), three(3);
    return std::array<Poly, 4>{
        -(u(0, "1") * X(1)) - u(0, "2") * X(2) - two * u(0) * X(1, "1") + u(0) * X(2, "2") - u(1) * X(2, "1") +
            X(2, "11"),
        -(u(1, "1") * X(1)) - u(1, "2") * X(2) - three * u(0) * X(1, "2") - u(1) * X(1, "1") -
            two * u(2) * X(2, "1") - X(1, "11") + two * X(2, "12"),
        -(u(2, "1") * X(1)) - u(2, "2") * X(2) - two * u(1) * X(1, "2") - u(2) * X(2, "2") -
            three * u(3) * X(2, "1") - two * X(1, "12") + X(2, "22"),
        -(u(3, "1") * X(1)) - u(3, "2") * X(2) - u(2) * X(1, "2") + u(3) * X(1, "1") - two * u(3) * X(2, "2") -
            X(1, "22")};
  }();
  return psi;
}

const Poly& total_derivative_psi_poly(int i, MultiIndex sigma) {
  if (i < 0 || i > 3) throw DomainError("psi component out of range");
  if (sigma.order() == 0) return psi_polynomials()[static_cast<std::size_t>(i)];
  static std::map<Key, Poly> cache;
  Key key{i, sigma.position()};
  {
    std::lock_guard lock(cache_mutex());
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  int j = sigma.r2 > 0 ? 2 : 1;
  MultiIndex parent = j == 2 ? MultiIndex{sigma.r1, sigma.r2 - 1} : MultiIndex{sigma.r1 - 1, sigma.r2};
  Poly d = total_derivative(total_derivative_psi_poly(i, parent), j);
  std::lock_guard lock(cache_mutex());
  return cache.emplace(key, std::move(d)).first->second;
}

std::vector<LinearTerm> total_derivative_psi_form(int i, MultiIndex sigma, const JetPoint& theta) {
  if (theta.order() < sigma.order() + 1)
    throw DomainError("D_sigma psi needs a jet of order " + std::to_string(sigma.order() + 1));
  std::vector<LinearTerm> out;
  for (const FormTerm& t : psi_form(i, sigma)) out.push_back({t.component, t.tau, eval_at_jet(t.coefficient, theta)});
  return out;
}

std::array<Scalar, 4> total_derivative_psi(const VectorFieldJet& X, const JetPoint& theta, MultiIndex sigma) {
  if (!(X.base() == theta.base())) throw DomainError("vector field and jet have different base points");
  if (X.order() < sigma.order() + 2)
    throw DomainError("D_sigma psi needs a vector field jet of order " + std::to_string(sigma.order() + 2));
  std::array<Scalar, 4> out;
  for (int i = 0; i < 4; ++i) {
    Scalar acc(0);
    for (const LinearTerm& t : total_derivative_psi_form(i, sigma, theta))
      if (!t.coefficient.is_zero()) acc += t.coefficient * X.at(t.component, t.tau);
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

std::array<Scalar, 4> psi(const VectorFieldJet& X, const JetPoint& theta1) {
  return total_derivative_psi(X, theta1, MultiIndex{});
}

std::vector<Scalar> LiftedVector::flatten() const {
  std::vector<Scalar> v{dx[0], dx[1]};
  for (const auto& c : du) v.insert(v.end(), c.begin(), c.end());
  return v;
}

namespace {

LiftedVector lift(const VectorFieldJet& X, const JetPoint& theta, bool horizontal) {
  int k = theta.order() - 1;
  if (k < 0) throw DomainError("lifting needs a jet of order >= 1");
  LiftedVector v;
  v.order = k;
  Scalar X1 = X.at(1, {}), X2 = X.at(2, {});
  v.dx = horizontal ? std::array<Scalar, 2>{X1, X2} : std::array<Scalar, 2>{Scalar(0), Scalar(0)};
  for (auto& c : v.du) c.assign(MultiIndex::count_up_to(k), Scalar(0));
  for (MultiIndex s : MultiIndex::up_to(k)) {
    std::array<Scalar, 4> d = total_derivative_psi(X, theta, s);
    for (int i = 0; i < 4; ++i) {
      Scalar c = d[static_cast<std::size_t>(i)];
      if (horizontal) c += X1 * theta.u(i, s.append(1)) + X2 * theta.u(i, s.append(2));
      v.du[static_cast<std::size_t>(i)][s.position()] = c;
    }
  }
  return v;
}

}  // namespace

LiftedVector lift_field(const VectorFieldJet& X, const JetPoint& theta) { return lift(X, theta, true); }
LiftedVector evolution_part(const VectorFieldJet& X, const JetPoint& theta) { return lift(X, theta, false); }

PolynomialField bracket(const PolynomialField& X, const PolynomialField& Y) {
  auto comp = [&](const Expr& Yi, const Expr& Xi) {
    return normalize(X.X1 * diff(Yi, "x1") + X.X2 * diff(Yi, "x2") - Y.X1 * diff(Xi, "x1") - Y.X2 * diff(Xi, "x2"));
  };
  return {comp(Y.X1, X.X1), comp(Y.X2, X.X2)};
}

namespace {

std::array<ScalarSeries, 2> field_on_series(const PolynomialField& X, const std::array<ScalarSeries, 2>& at) {
  int order = std::min(at[0].order(), at[1].order());
  std::map<std::string, ScalarSeries, std::less<>> env{{"x1", at[0]}, {"x2", at[1]}};
  SeriesDomain d{order, &env};
  Evaluator<ScalarSeries, SeriesDomain> e1(d), e2(d);
  return {e1(X.X1), e2(X.X2)};
}

}  // namespace

MapJet flow_jet(const PolynomialField& X, const Point& p, double t, int order, int steps) {
  MapJet phi = MapJet::identity(p, order);
  std::array<ScalarSeries, 2> y = phi.f;
  const Scalar h(t / steps);
  const Scalar half(t / steps / 2);
  auto axpy = [](const std::array<ScalarSeries, 2>& a, const std::array<ScalarSeries, 2>& k, const Scalar& c) {
    return std::array<ScalarSeries, 2>{a[0] + k[0] * c, a[1] + k[1] * c};
  };
  for (int n = 0; n < steps; ++n) {
    auto k1 = field_on_series(X, y);
    auto k2 = field_on_series(X, axpy(y, k1, half));
    auto k3 = field_on_series(X, axpy(y, k2, half));
    auto k4 = field_on_series(X, axpy(y, k3, h));
    for (std::size_t i = 0; i < 2; ++i)
      y[i] = y[i] + (k1[i] + k2[i] * Scalar(2) + k3[i] * Scalar(2) + k4[i]) * Scalar(t / steps / 6);
  }
  for (const auto& s : y)
    if (!std::isfinite(s.constant().to_double())) throw DomainError("flow escapes the chart");
  return {p, y};
}

Point flow_point(const PolynomialField& X, const Point& p, double t, int steps) {
  MapJet j = flow_jet(X, p, t, 0, steps);
  return j.target();
}

namespace {

// (-f(2h) + 8 f(h) - 8 f(-h) + f(-2h)) / 12h, componentwise
template <class F>
std::vector<double> five_point(F f, double h) {
  std::vector<double> a = f(2 * h), b = f(h), c = f(-h), d = f(-2 * h);
  for (std::size_t n = 0; n < a.size(); ++n) a[n] = (-a[n] + 8 * b[n] - 8 * c[n] + d[n]) / (12 * h);
  return a;
}

}  // namespace

std::array<double, 4> flow_oracle(const PolynomialField& X, const Section& s, const Point& p, double dt) {
  auto value = [&](double t) {
    Point q = flow_point(X, p, -t);
    JetPoint theta = lift_jet(flow_jet(X, q, t, 2), jet_eval(s, q, 0));
    std::vector<double> v;
    for (int i = 0; i < 4; ++i) v.push_back(theta.u(i, {}).to_double());
    return v;
  };
  std::vector<double> d = five_point(value, dt);
  return {d[0], d[1], d[2], d[3]};
}

std::vector<double> flow_lift_derivative(const PolynomialField& X, const JetPoint& theta, double dt) {
  auto coords = [&](double t) {
    JetPoint j = lift_jet(flow_jet(X, theta.base(), t, theta.order() + 2), theta);
    std::vector<double> v{j.base()[0].to_double(), j.base()[1].to_double()};
    for (int i = 0; i < 4; ++i)
      for (const Scalar& c : j.component(i)) v.push_back(c.to_double());
    return v;
  };
  return five_point(coords, dt);
}

namespace {

// Jet coordinates (x1, x2, u^i_sigma) as a flat vector and back.
std::vector<double> jet_coords(const JetPoint& theta) {
  std::vector<double> v{theta.base()[0].to_double(), theta.base()[1].to_double()};
  for (int i = 0; i < 4; ++i)
    for (const Scalar& c : theta.component(i)) v.push_back(c.to_double());
  return v;
}

// Lifted field at a k-jet; the order k + 1 coordinates do not enter.
std::vector<double> lifted_at(const PolynomialField& X, const std::vector<double>& c, int k) {
  JetPoint theta(k + 1, {Scalar(c[0]), Scalar(c[1])});
  std::size_t n = 2;
  for (int i = 0; i < 4; ++i)
    for (MultiIndex s : MultiIndex::up_to(k)) theta.u(i, s) = Scalar(c[n++]);
  std::vector<double> out;
  for (const Scalar& x : lift_field(X.jet(theta.base(), k + 2), theta).flatten()) out.push_back(x.to_double());
  return out;
}

}  // namespace

HomomorphismReport homomorphism_check(const PolynomialField& X, const PolynomialField& Y, const JetPoint& theta,
                                      double step) {
  int k = theta.order();
  std::vector<double> c = jet_coords(theta);
  const std::size_t n = c.size();
  auto jacobian = [&](const PolynomialField& F) {
    std::vector<std::vector<double>> J(n, std::vector<double>(n));
    for (std::size_t b = 0; b < n; ++b) {
      std::vector<double> cp = c, cm = c;
      cp[b] += step;
      cm[b] -= step;
      std::vector<double> fp = lifted_at(F, cp, k), fm = lifted_at(F, cm, k);
      for (std::size_t a = 0; a < n; ++a) J[a][b] = (fp[a] - fm[a]) / (2 * step);
    }
    return J;
  };
  std::vector<double> zx = lifted_at(X, c, k), zy = lifted_at(Y, c, k);
  auto jx = jacobian(X), jy = jacobian(Y);
  HomomorphismReport r;
  r.bracket_of_lifts.assign(n, 0.0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) r.bracket_of_lifts[a] += jy[a][b] * zx[b] - jx[a][b] * zy[b];
  r.lifted_bracket = lifted_at(bracket(X, Y), c, k);
  for (std::size_t a = 0; a < n; ++a) {
    double scale = std::max(1.0, std::fabs(r.lifted_bracket[a]));
    r.max_error = std::max(r.max_error, std::fabs(r.lifted_bracket[a] - r.bracket_of_lifts[a]) / scale);
  }
  return r;
}

}  // namespace jetlin
