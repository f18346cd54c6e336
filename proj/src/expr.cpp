#include "jetlin/expr.hpp"

#include <functional>

#include "jetlin/errors.hpp"

namespace jetlin {

namespace {

std::shared_ptr<ExprNode> make_node(Expr::Kind kind) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  return n;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Leading constant coefficient of a term, used when rendering sums.
bool has_negative_coefficient(const Expr& e) {
  if (e.is_constant()) return sgn(e.value()) < 0;
  if (e.kind() == Expr::Kind::Product) {
    const Expr& first = e.operands().front();
    return first.is_constant() && sgn(first.value()) < 0;
  }
  return false;
}

}  // namespace

std::string_view function_name(Function f) {
  switch (f) {
    case Function::Exp: return "exp";
    case Function::Log: return "log";
    case Function::Sin: return "sin";
    case Function::Cos: return "cos";
  }
  return "?";
}

Expr::Expr() : Expr(Rational(0)) {}
Expr::Expr(int n) : Expr(Rational(n)) {}
Expr::Expr(long n) : Expr(Rational(n)) {}
Expr::Expr(Rational q) {
  auto n = make_node(Kind::Constant);
  n->value = std::move(q);
  node_ = std::move(n);
}

Expr Expr::constant(Rational q) { return Expr(std::move(q)); }

Expr Expr::variable(std::string name) {
  auto n = make_node(Kind::Variable);
  n->name = std::move(name);
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::sum(std::vector<Expr> terms) {
  Rational c = 0;
  std::vector<Expr> rest;
  rest.reserve(terms.size());
  std::function<void(const Expr&)> absorb = [&](const Expr& t) {
    if (t.kind() == Kind::Sum) {
      for (const Expr& s : t.operands()) absorb(s);
    } else if (t.is_constant()) {
      c += t.value();
    } else {
      rest.push_back(t);
    }
  };
  for (const Expr& t : terms) absorb(t);
  if (sgn(c) != 0) rest.push_back(Expr(c));
  if (rest.empty()) return Expr(0);
  if (rest.size() == 1) return rest.front();
  auto n = make_node(Kind::Sum);
  n->operands = std::move(rest);
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::product(std::vector<Expr> factors) {
  Rational c = 1;
  std::vector<Expr> rest;
  rest.reserve(factors.size());
  std::function<void(const Expr&)> absorb = [&](const Expr& f) {
    if (f.kind() == Kind::Product) {
      for (const Expr& s : f.operands()) absorb(s);
    } else if (f.is_constant()) {
      c *= f.value();
    } else {
      rest.push_back(f);
    }
  };
  for (const Expr& f : factors) absorb(f);
  if (sgn(c) == 0) return Expr(0);
  if (rest.empty()) return Expr(c);
  if (rest.size() == 1 && c == 1) return rest.front();
  std::vector<Expr> ops;
  ops.reserve(rest.size() + 1);
  if (c != 1) ops.push_back(Expr(c));
  for (auto& r : rest) ops.push_back(std::move(r));
  auto n = make_node(Kind::Product);
  n->operands = std::move(ops);
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::power(Expr base, long exponent) {
  if (exponent == 0) return Expr(1);
  if (exponent == 1) return base;
  if (base.is_constant()) {
    const Rational& b = base.value();
    if (sgn(b) != 0 || exponent > 0) {
      mpz_class num, den;
      unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
      mpz_pow_ui(num.get_mpz_t(), b.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), b.get_den_mpz_t(), e);
      Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
      r.canonicalize();
      return Expr(r);
    }
  }
  if (base.kind() == Kind::Power) return power(base.operands().front(), base.exponent() * exponent);
  auto n = make_node(Kind::Power);
  n->operands = {std::move(base)};
  n->exponent = exponent;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::quotient(Expr numerator, Expr denominator) {
  if (denominator.is_constant() && sgn(denominator.value()) != 0) {
    Rational inv = 1 / denominator.value();
    return product({std::move(numerator), Expr(inv)});
  }
  if (numerator.is_zero() && !denominator.is_constant()) return Expr(0);
  auto n = make_node(Kind::Quotient);
  n->operands = {std::move(numerator), std::move(denominator)};
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr Expr::call(Function f, Expr argument) {
  if (argument.is_constant()) {
    const Rational& a = argument.value();
    switch (f) {
      case Function::Exp:
      case Function::Cos:
        if (sgn(a) == 0) return Expr(1);
        break;
      case Function::Sin:
        if (sgn(a) == 0) return Expr(0);
        break;
      case Function::Log:
        if (a == 1) return Expr(0);
        break;
    }
  }
  auto n = make_node(Kind::Call);
  n->operands = {std::move(argument)};
  n->function = f;
  return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
std::span<const Expr> Expr::operands() const { return node_->operands; }
long Expr::exponent() const { return node_->exponent; }
Function Expr::function() const { return node_->function; }
bool Expr::is_zero() const { return is_constant() && sgn(value()) == 0; }
bool Expr::is_one() const { return is_constant() && value() == 1; }

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant: return a.value() == b.value();
    case Expr::Kind::Variable: return a.name() == b.name();
    case Expr::Kind::Power:
      if (a.exponent() != b.exponent()) return false;
      break;
    case Expr::Kind::Call:
      if (a.function() != b.function()) return false;
      break;
    default: break;
  }
  auto oa = a.operands(), ob = b.operands();
  if (oa.size() != ob.size()) return false;
  for (std::size_t i = 0; i < oa.size(); ++i)
    if (!(oa[i] == ob[i])) return false;
  return true;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::quotient(a, b); }
Expr operator-(const Expr& a) { return Expr::product({Expr(-1), a}); }
Expr pow(const Expr& base, long exponent) { return Expr::power(base, exponent); }
Expr exp(const Expr& a) { return Expr::call(Function::Exp, a); }
Expr log(const Expr& a) { return Expr::call(Function::Log, a); }
Expr sin(const Expr& a) { return Expr::call(Function::Sin, a); }
Expr cos(const Expr& a) { return Expr::call(Function::Cos, a); }

namespace {

// Precedence: 1 sum, 2 product/quotient, 3 unary minus, 4 power, 5 atom.
std::string render_impl(const Expr& e, int parent);

std::string wrap(std::string s, int own, int parent) { return own < parent ? "(" + s + ")" : s; }

std::string render_impl(const Expr& e, int parent) {
  switch (e.kind()) {
    case Expr::Kind::Constant: {
      const Rational& q = e.value();
      if (sgn(q) < 0) return wrap(to_string(q), 3, parent);
      if (is_integer(q)) return to_string(q);
      return wrap(to_string(q), 2, parent);
    }
    case Expr::Kind::Variable: return e.name();
    case Expr::Kind::Sum: {
      std::string out;
      bool first = true;
      for (const Expr& t : e.operands()) {
        if (first) {
          out = render_impl(t, 1);
          first = false;
        } else if (has_negative_coefficient(t)) {
          out += " - " + render_impl(-t, 2);
        } else {
          out += " + " + render_impl(t, 2);
        }
      }
      return wrap(out, 1, parent);
    }
    case Expr::Kind::Product: {
      auto ops = e.operands();
      std::size_t start = 0;
      std::string out;
      if (ops.front().is_constant() && ops.front().value() == -1) {
        std::vector<Expr> rest(ops.begin() + 1, ops.end());
        return wrap("-" + render_impl(Expr::product(rest), 2), 3, parent);
      }
      if (ops.front().is_constant() && sgn(ops.front().value()) < 0) {
        std::vector<Expr> rest(ops.begin(), ops.end());
        rest.front() = Expr(Rational(-ops.front().value()));
        return wrap("-" + render_impl(Expr::product(rest), 2), 3, parent);
      }
      for (std::size_t i = start; i < ops.size(); ++i) {
        if (i > start) out += "*";
        out += render_impl(ops[i], i == start ? 2 : 3);
      }
      return wrap(out, 2, parent);
    }
    case Expr::Kind::Quotient:
      return wrap(render_impl(e.operands()[0], 2) + "/" + render_impl(e.operands()[1], 3), 2, parent);
    case Expr::Kind::Power: {
      std::string ex = std::to_string(e.exponent());
      if (e.exponent() < 0) ex = "(" + ex + ")";
      return wrap(render_impl(e.operands()[0], 5) + "^" + ex, 4, parent);
    }
    case Expr::Kind::Call:
      return std::string(function_name(e.function())) + "(" + render_impl(e.operands()[0], 0) + ")";
  }
  return "?";
}

}  // namespace

std::string render(const Expr& e) { return render_impl(e, 0); }

Expr diff(const Expr& e, std::string_view v) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return Expr(0);
    case Expr::Kind::Variable: return Expr(e.name() == v ? 1 : 0);
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& t : e.operands()) terms.push_back(diff(t, v));
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      auto ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = diff(ops[i], v);
        if (d.is_zero()) continue;
        std::vector<Expr> factors(ops.begin(), ops.end());
        factors[i] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      const Expr& b = e.operands()[0];
      Expr db = diff(b, v);
      if (db.is_zero()) return Expr(0);
      return Expr::product({Expr(e.exponent()), Expr::power(b, e.exponent() - 1), db});
    }
    case Expr::Kind::Quotient: {
      const Expr& n = e.operands()[0];
      const Expr& d = e.operands()[1];
      Expr dn = diff(n, v), dd = diff(d, v);
      if (dd.is_zero()) return dn / d;
      return (dn * d - n * dd) / Expr::power(d, 2);
    }
    case Expr::Kind::Call: {
      const Expr& a = e.operands()[0];
      Expr da = diff(a, v);
      if (da.is_zero()) return Expr(0);
      switch (e.function()) {
        case Function::Exp: return e * da;
        case Function::Log: return da / a;
        case Function::Sin: return cos(a) * da;
        case Function::Cos: return -(sin(a) * da);
      }
    }
  }
  return Expr(0);
}

namespace {

Expr rebuild(const Expr& e, const std::function<Expr(const Expr&)>& leaf) {
  switch (e.kind()) {
    case Expr::Kind::Constant: return e;
    case Expr::Kind::Variable: return leaf(e);
    case Expr::Kind::Sum: {
      std::vector<Expr> t;
      for (const Expr& o : e.operands()) t.push_back(rebuild(o, leaf));
      return Expr::sum(std::move(t));
    }
    case Expr::Kind::Product: {
      std::vector<Expr> t;
      for (const Expr& o : e.operands()) t.push_back(rebuild(o, leaf));
      return Expr::product(std::move(t));
    }
    case Expr::Kind::Power: return Expr::power(rebuild(e.operands()[0], leaf), e.exponent());
    case Expr::Kind::Quotient:
      return Expr::quotient(rebuild(e.operands()[0], leaf), rebuild(e.operands()[1], leaf));
    case Expr::Kind::Call: return Expr::call(e.function(), rebuild(e.operands()[0], leaf));
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements) {
  return rebuild(e, [&](const Expr& v) {
    auto it = replacements.find(v.name());
    return it == replacements.end() ? v : it->second;
  });
}

Expr rename(const Expr& e, const std::map<std::string, std::string, std::less<>>& names) {
  return rebuild(e, [&](const Expr& v) {
    auto it = names.find(v.name());
    return it == names.end() ? v : Expr::variable(it->second);
  });
}

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> out;
  std::function<void(const Expr&)> walk = [&](const Expr& x) {
    if (x.kind() == Expr::Kind::Variable) out.insert(x.name());
    for (const Expr& o : x.operands()) walk(o);
  };
  walk(e);
  return out;
}

bool contains_call(const Expr& e) {
  if (e.kind() == Expr::Kind::Call) return true;
  for (const Expr& o : e.operands())
    if (contains_call(o)) return true;
  return false;
}

std::size_t node_count(const Expr& e) {
  std::size_t n = 1;
  for (const Expr& o : e.operands()) n += node_count(o);
  return n;
}

}  // namespace jetlin
