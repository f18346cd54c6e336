#include "jetlin/ratfunc.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>

#include "jetlin/errors.hpp"
#include "jetlin/eval.hpp"

namespace jetlin {

namespace {

// Splits a nonzero polynomial into c * prod(factor^e) with every factor
// normalized: single variables for the monomial content, and one primitive
// remainder with leading coefficient 1.
std::pair<Rational, std::vector<RatFunc::Factor>> split_factor(const Poly& p) {
  if (p.is_zero()) throw SingularityError("division by zero");
  Rational lc = p.leading().second;
  std::vector<RatFunc::Factor> out;
  if (p.is_constant()) return {lc, out};
  // monomial content
  Monomial content = p.terms().begin()->first;
  for (const auto& [m, c] : p.terms()) {
    Monomial keep;
    std::size_t j = 0;
    for (const auto& [v, e] : content) {
      while (j < m.size() && m[j].first < v) ++j;
      if (j < m.size() && m[j].first == v) keep.emplace_back(v, std::min(e, m[j].second));
    }
    content = std::move(keep);
    if (content.empty()) break;
  }
  Poly rest;
  for (const auto& [m, c] : p.terms()) {
    Monomial r;
    std::size_t j = 0;
    for (const auto& [v, e] : m) {
      while (j < content.size() && content[j].first < v) ++j;
      std::uint32_t sub = (j < content.size() && content[j].first == v) ? content[j].second : 0;
      if (e > sub) r.emplace_back(v, e - sub);
    }
    rest += Poly::term(std::move(r), c / lc);
  }
  for (const auto& [v, e] : content) out.emplace_back(Poly::variable(v), static_cast<int>(e));
  if (!rest.is_constant()) out.emplace_back(std::move(rest), 1);
  return {lc, out};
}

Poly expand_factors(const std::vector<RatFunc::Factor>& fs) {
  Poly r(1);
  for (const auto& [f, e] : fs) r = r * f.pow(static_cast<unsigned>(e));
  return r;
}

RatFunc atom_derivative(VarId atom, std::string_view variable);

// d/dv of a polynomial whose indeterminates may include atoms.
RatFunc poly_derivative(const Poly& p, std::string_view variable) {
  VarId v = VarTable::intern(variable);
  RatFunc result(p.derivative(v));
  for (VarId w : p.variables()) {
    if (!VarTable::is_atom(w)) continue;
    Poly dp = p.derivative(w);
    if (dp.is_zero()) continue;
    RatFunc dw = atom_derivative(w, variable);
    if (dw.is_zero()) continue;
    result += RatFunc(dp) * dw;
  }
  return result;
}

RatFunc atom_derivative(VarId atom, std::string_view variable) {
  static std::mutex mu;
  static std::map<std::pair<VarId, std::string>, RatFunc> cache;
  auto key = std::make_pair(atom, std::string(variable));
  {
    std::lock_guard lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  RatFunc d = normal_form(diff(VarTable::atom(atom), variable));
  std::lock_guard lock(mu);
  cache.emplace(key, d);
  return d;
}

RatFunc denominator_form(const Expr& e);

RatFunc normal_form_impl(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return RatFunc(e.value());
    case Expr::Kind::Variable: return RatFunc::variable(e.name());
    case Expr::Kind::Sum: {
      RatFunc acc;
      for (const Expr& t : e.operands()) acc += normal_form_impl(t);
      return acc;
    }
    case Expr::Kind::Product: {
      RatFunc acc(1);
      for (const Expr& t : e.operands()) acc *= normal_form_impl(t);
      return acc;
    }
    case Expr::Kind::Power: {
      long n = e.exponent();
      if (n >= 0) return normal_form_impl(e.operands()[0]).pow(n);
      return denominator_form(e.operands()[0]).pow(-n);
    }
    case Expr::Kind::Quotient:
      return normal_form_impl(e.operands()[0]) * denominator_form(e.operands()[1]);
    case Expr::Kind::Call: {
      RatFunc arg = normal_form_impl(e.operands()[0]).reduced();
      Expr argument = arg.to_expr();
      Expr call = Expr::call(e.function(), argument);
      if (call.is_constant()) return RatFunc(call.value());
      return RatFunc(Poly::variable(VarTable::intern_atom(call)));
    }
  }
  return RatFunc();
}

// 1/e, keeping product and power structure so that factored denominators
// survive a round trip through to_expr().
RatFunc denominator_form(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Product: {
      RatFunc acc(1);
      for (const Expr& t : e.operands()) acc *= denominator_form(t);
      return acc;
    }
    case Expr::Kind::Power: {
      long n = e.exponent();
      if (n > 0) return denominator_form(e.operands()[0]).pow(n);
      return normal_form_impl(e.operands()[0]).pow(-n);
    }
    default: return normal_form_impl(e).reciprocal();
  }
}

}  // namespace

Poly RatFunc::expanded_denominator() const { return expand_factors(den_); }

bool RatFunc::contains_atom() const {
  if (num_.contains_atom()) return true;
  for (const auto& [f, e] : den_)
    if (f.contains_atom()) return true;
  return false;
}

void RatFunc::multiply_denominator_factor(Poly f, int e) {
  auto it = std::lower_bound(den_.begin(), den_.end(), f, [](const Factor& a, const Poly& b) { return a.first < b; });
  if (it != den_.end() && it->first == f)
    it->second += e;
  else
    den_.insert(it, Factor{std::move(f), e});
}

void RatFunc::divide_by_factor(const Poly& factor, int e) {
  auto [c, fs] = split_factor(factor);
  Rational ce = 1;
  for (int i = 0; i < e; ++i) ce *= c;
  num_ *= Rational(1 / ce);
  for (auto& [f, k] : fs) multiply_denominator_factor(std::move(f), k * e);
}

RatFunc& RatFunc::operator+=(const RatFunc& o) {
  if (o.num_.is_zero()) return *this;
  if (num_.is_zero()) return *this = o;
  if (den_ == o.den_) {
    num_ += o.num_;
    return *this;
  }
  std::vector<Factor> lcm = den_;
  for (const auto& [f, e] : o.den_) {
    auto it = std::lower_bound(lcm.begin(), lcm.end(), f, [](const Factor& a, const Poly& b) { return a.first < b; });
    if (it != lcm.end() && it->first == f)
      it->second = std::max(it->second, e);
    else
      lcm.insert(it, Factor{f, e});
  }
  auto missing = [&](const std::vector<Factor>& have) {
    std::vector<Factor> m;
    for (const auto& [f, e] : lcm) {
      int h = 0;
      for (const auto& [g, k] : have)
        if (g == f) h = k;
      if (e > h) m.emplace_back(f, e - h);
    }
    return expand_factors(m);
  };
  num_ = num_ * missing(den_) + o.num_ * missing(o.den_);
  den_ = std::move(lcm);
  return *this;
}

RatFunc& RatFunc::operator-=(const RatFunc& o) { return *this += -o; }

RatFunc& RatFunc::operator*=(const RatFunc& o) {
  num_ = num_ * o.num_;
  if (num_.is_zero()) {
    den_.clear();
    return *this;
  }
  for (const auto& [f, e] : o.den_) multiply_denominator_factor(f, e);
  return *this;
}

RatFunc RatFunc::reciprocal() const {
  if (num_.is_zero()) throw SingularityError("reciprocal of the zero function");
  RatFunc r(expand_factors(den_));
  r.divide_by_factor(num_, 1);
  return r;
}

RatFunc RatFunc::pow(long n) const {
  if (n < 0) return reciprocal().pow(-n);
  RatFunc r(1);
  r.num_ = num_.pow(static_cast<unsigned>(n));
  if (n > 0)
    for (const auto& [f, e] : den_) r.den_.emplace_back(f, e * static_cast<int>(n));
  return r;
}

RatFunc RatFunc::derivative(std::string_view variable) const {
  RatFunc base(1);
  base.den_ = den_;
  RatFunc result = poly_derivative(num_, variable) * base;
  for (const auto& [f, e] : den_) {
    RatFunc df = poly_derivative(f, variable);
    if (df.is_zero()) continue;
    RatFunc t = RatFunc(num_ * Rational(e)) * df * base;
    t.divide_by_factor(f, 1);
    result -= t;
  }
  return result;
}

RatFunc RatFunc::reduced() const {
  RatFunc r = *this;
  for (auto& [f, e] : r.den_) {
    while (e > 0) {
      auto q = r.num_.exact_divide(f);
      if (!q) break;
      r.num_ = std::move(*q);
      --e;
    }
  }
  std::erase_if(r.den_, [](const Factor& x) { return x.second == 0; });
  if (r.num_.is_zero()) r.den_.clear();
  return r;
}

Expr RatFunc::to_expr() const {
  Expr n = num_.to_expr();
  if (den_.empty()) return n;
  std::vector<Expr> fs;
  for (const auto& [f, e] : den_) fs.push_back(jetlin::pow(f.to_expr(), e));
  return Expr::quotient(n, Expr::product(std::move(fs)));
}

Scalar RatFunc::evaluate(const std::function<Scalar(VarId)>& value) const {
  Scalar d(1);
  for (const auto& [f, e] : den_) d *= ipow(f.evaluate(value), e);
  if (d.is_zero()) throw SingularityError(render(to_expr()));
  return num_.evaluate(value) / d;
}

RatFunc normal_form(const Expr& e) { return normal_form_impl(e); }

Scalar evaluate(const RatFunc& r, const Env& env) {
  std::map<VarId, Scalar> cache;
  return r.evaluate([&](VarId v) {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    Scalar x = VarTable::is_atom(v) ? eval(VarTable::atom(v), env) : eval(Expr::variable(VarTable::name(v)), env);
    cache.emplace(v, x);
    return x;
  });
}

Expr normalize(const Expr& e) { return normal_form(e).reduced().to_expr(); }

std::string to_string(ZeroVerdict::Kind k) {
  switch (k) {
    case ZeroVerdict::Kind::ProvenZero: return "ProvenZero";
    case ZeroVerdict::Kind::ProvenNonZero: return "ProvenNonZero";
    case ZeroVerdict::Kind::NumericallyZero: return "NumericallyZero";
  }
  return "?";
}

std::vector<Env> sample_points(const std::vector<std::string>& variables, const ZeroTestOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::vector<Env> out;
  for (int s = 0; s < options.samples; ++s) {
    Env env;
    for (const auto& v : variables) {
      long q = 1 + static_cast<long>(rng() % static_cast<unsigned long>(options.max_denominator));
      long span = 2L * options.box * q + 1;
      long p = static_cast<long>(rng() % static_cast<unsigned long>(span)) - options.box * q;
      env[v] = Scalar(ratio(p, q));
    }
    out.push_back(std::move(env));
  }
  return out;
}

namespace {

ZeroVerdict sample_zero_test(const Expr& e, const ZeroTestOptions& options) {
  auto vars = free_variables(e);
  std::vector<std::string> names(vars.begin(), vars.end());
  ZeroVerdict v{ZeroVerdict::Kind::NumericallyZero, "sampling"};
  for (const Env& env : sample_points(names, options)) {
    try {
      Scalar x = eval(e, env);
      ++v.samples_used;
      v.max_abs = std::max(v.max_abs, std::fabs(x.to_double()));
    } catch (const SingularityError&) {
      ++v.singular_samples;
    }
  }
  if (v.samples_used == 0) throw InconclusiveError("every sample point hit a singularity");
  if (v.max_abs >= options.epsilon) v.kind = ZeroVerdict::Kind::ProvenNonZero;
  return v;
}

}  // namespace

ZeroVerdict is_zero(const RatFunc& r, const ZeroTestOptions& options) {
  if (r.is_zero()) return {ZeroVerdict::Kind::ProvenZero, "symbolic"};
  if (!r.contains_atom()) return {ZeroVerdict::Kind::ProvenNonZero, "symbolic"};
  return sample_zero_test(r.to_expr(), options);
}

ZeroVerdict is_zero(const Expr& e, const ZeroTestOptions& options) {
  RatFunc r;
  try {
    r = normal_form(e);
  } catch (const SingularityError&) {
    // e.g. a division by an identically vanishing polynomial
    throw InconclusiveError("expression is undefined everywhere: " + render(e));
  }
  if (r.is_zero()) return {ZeroVerdict::Kind::ProvenZero, "symbolic"};
  if (!r.contains_atom()) return {ZeroVerdict::Kind::ProvenNonZero, "symbolic"};
  return sample_zero_test(e, options);
}

}  // namespace jetlin
