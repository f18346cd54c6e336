#include "jetlin/jet.hpp"

#include <algorithm>

#include "jetlin/eval.hpp"
#include "jetlin/poly.hpp"
#include "jetlin/ratfunc.hpp"
#include "jetlin/series.hpp"

namespace jetlin {

MultiIndex MultiIndex::at(std::size_t position) {
  int d = 0;
  while (count_up_to(d) <= position) ++d;
  int r2 = static_cast<int>(position) - d * (d + 1) / 2;
  return {d - r2, r2};
}

std::vector<MultiIndex> MultiIndex::up_to(int k) {
  std::vector<MultiIndex> out;
  for (int d = 0; d <= k; ++d)
    for (int b = 0; b <= d; ++b) out.push_back({d - b, b});
  return out;
}

std::vector<MultiIndex> MultiIndex::of_order(int d) {
  std::vector<MultiIndex> out;
  for (int b = 0; b <= d; ++b) out.push_back({d - b, b});
  return out;
}

Rational MultiIndex::factorial_weight() const { return factorial(r1) * factorial(r2); }

std::string u_name(int i, MultiIndex sigma) {
  std::string s = "u" + std::to_string(i);
  if (sigma.order() > 0) s += "_" + sigma.digits();
  return s;
}

std::string x_name(int i, MultiIndex tau) {
  std::string s = "X" + std::to_string(i);
  if (tau.order() > 0) s += "_" + tau.digits();
  return s;
}

std::string Section::str() const {
  std::string s;
  for (int i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += "u" + std::to_string(i) + " = " + render(u[static_cast<std::size_t>(i)]);
  }
  return s;
}

Section rhs_to_section(const Expr& rhs) {
  RatFunc r = normal_form(rhs).reduced();
  VarId p = VarTable::intern("p");
  auto mentions_p = [&](const Poly& q) {
    for (VarId v : q.variables()) {
      if (v == p) return true;
      if (VarTable::is_atom(v) && free_variables(VarTable::atom(v)).count("p")) return true;
    }
    return false;
  };
  for (const auto& [f, e] : r.denominator())
    if (mentions_p(f)) throw NotInClassError("right-hand side is not polynomial in p");
  std::vector<Poly> cs = r.numerator().coefficients_in(p);
  for (const Poly& c : cs)
    if (mentions_p(c)) throw NotInClassError("right-hand side is not polynomial in p");
  if (cs.size() > 4) throw NotInClassError("right-hand side has degree " + std::to_string(cs.size() - 1) + " in p");
  Section s;
  const std::map<std::string, std::string, std::less<>> names{{"x", "x1"}, {"y", "x2"}};
  for (std::size_t a = 0; a < cs.size(); ++a) {
    RatFunc coeff(cs[a]);
    for (const auto& [f, e] : r.denominator()) coeff.divide_by_factor(f, e);
    s.u[a] = rename(coeff.reduced().to_expr(), names);
  }
  return s;
}

JetPoint::JetPoint(int order, Point base) : order_(order), base_(std::move(base)) {
  if (order < 0) throw DomainError("negative jet order");
  for (auto& c : coords_) c.assign(MultiIndex::count_up_to(order), Scalar(0));
}

bool JetPoint::is_exact() const {
  if (!base_[0].is_exact() || !base_[1].is_exact()) return false;
  for (const auto& c : coords_)
    for (const auto& x : c)
      if (!x.is_exact()) return false;
  return true;
}

JetPoint jet_eval(const Section& s, const Point& p, int k) {
  JetPoint theta(k, p);
  for (int i = 0; i < 4; ++i) {
    ScalarSeries t = taylor_expand(s.u[static_cast<std::size_t>(i)], p, k);
    for (MultiIndex sigma : MultiIndex::up_to(k))
      theta.u(i, sigma) = t.coeff(sigma.r1, sigma.r2) * Scalar(sigma.factorial_weight());
  }
  return theta;
}

JetPoint project(const JetPoint& theta, int r) {
  if (r > theta.order()) throw DomainError("cannot project a " + std::to_string(theta.order()) + "-jet to order " + std::to_string(r));
  if (r < 0) throw DomainError("negative jet order");
  JetPoint out(r, theta.base());
  for (int i = 0; i < 4; ++i)
    for (MultiIndex sigma : MultiIndex::up_to(r)) out.u(i, sigma) = theta.u(i, sigma);
  return out;
}

namespace {

Rational as_rational(const Scalar& s) {
  if (s.is_exact()) return s.exact();
  return Rational(s.to_double());
}

}  // namespace

Section representative_section(const JetPoint& theta) {
  Expr d1 = Expr::variable("x1") - Expr(as_rational(theta.base()[0]));
  Expr d2 = Expr::variable("x2") - Expr(as_rational(theta.base()[1]));
  Section s;
  for (int i = 0; i < 4; ++i) {
    std::vector<Expr> terms;
    for (MultiIndex sigma : MultiIndex::up_to(theta.order())) {
      Rational c = as_rational(theta.u(i, sigma)) / sigma.factorial_weight();
      if (sgn(c) == 0) continue;
      terms.push_back(Expr(c) * pow(d1, sigma.r1) * pow(d2, sigma.r2));
    }
    s.u[static_cast<std::size_t>(i)] = Expr::sum(std::move(terms));
  }
  return s;
}

}  // namespace jetlin
