#pragma once

#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

#include "jetlin/errors.hpp"
#include "jetlin/expr.hpp"
#include "jetlin/scalar.hpp"

namespace jetlin {

/// Evaluates an expression tree in an arbitrary numeric domain. The domain
/// supplies constants, the field operations that can fail (reciprocal,
/// primitives) and a lookup for variables; T supplies +, -, *.
///
/// Shared subtrees are evaluated once.
template <class T, class Domain>
class Evaluator {
 public:
  explicit Evaluator(const Domain& domain) : domain_(domain) {}

  T operator()(const Expr& e) {
    auto it = memo_.find(e.node());
    if (it != memo_.end()) return it->second;
    T v = compute(e);
    memo_.emplace(e.node(), v);
    return v;
  }

 private:
  T compute(const Expr& e) {
    switch (e.kind()) {
      case Expr::Kind::Constant: return domain_.constant(e.value());
      case Expr::Kind::Variable: return domain_.variable(e.name());
      case Expr::Kind::Sum: {
        auto ops = e.operands();
        T acc = (*this)(ops[0]);
        for (std::size_t i = 1; i < ops.size(); ++i) acc = acc + (*this)(ops[i]);
        return acc;
      }
      case Expr::Kind::Product: {
        auto ops = e.operands();
        T acc = (*this)(ops[0]);
        for (std::size_t i = 1; i < ops.size(); ++i) acc = acc * (*this)(ops[i]);
        return acc;
      }
      case Expr::Kind::Power: {
        T b = (*this)(e.operands()[0]);
        long n = e.exponent();
        if (n < 0) {
          b = domain_.reciprocal(b, e);
          n = -n;
        }
        T result = domain_.constant(Rational(1));
        while (n > 0) {
          if (n & 1) result = result * b;
          n >>= 1;
          if (n) b = b * b;
        }
        return result;
      }
      case Expr::Kind::Quotient: {
        T num = (*this)(e.operands()[0]);
        T den = (*this)(e.operands()[1]);
        return num * domain_.reciprocal(den, e);
      }
      case Expr::Kind::Call: return domain_.apply(e.function(), (*this)(e.operands()[0]), e);
    }
    return domain_.constant(Rational(0));
  }

  const Domain& domain_;
  std::unordered_map<const ExprNode*, T> memo_;
};

/// Scalar domain: exact while inputs are exact, double otherwise.
/// Primitives at exact special points (exp(0), log(1), sin(0), cos(0)) stay
/// exact.
struct ScalarDomain {
  const std::map<std::string, Scalar, std::less<>>* env = nullptr;

  Scalar constant(const Rational& q) const { return Scalar(q); }
  Scalar variable(const std::string& name) const {
    auto it = env->find(name);
    if (it == env->end()) throw DomainError("unbound variable '" + name + "'");
    return it->second;
  }
  Scalar reciprocal(const Scalar& s, const Expr& where) const {
    if (s.is_zero() || !s.is_finite()) throw SingularityError(render(where));
    Scalar r = Scalar(1) / s;
    if (!r.is_finite()) throw SingularityError(render(where));
    return r;
  }
  Scalar apply(Function f, const Scalar& a, const Expr& where) const {
    if (a.is_exact()) {
      const Rational& q = a.exact();
      if (sgn(q) == 0 && f != Function::Log) return Scalar(f == Function::Sin ? 0 : 1);
      if (f == Function::Log && q == 1) return Scalar(0);
    }
    double x = a.to_double(), r = 0;
    switch (f) {
      case Function::Exp: r = std::exp(x); break;
      case Function::Log:
        if (!(x > 0)) throw SingularityError(render(where));
        r = std::log(x);
        break;
      case Function::Sin: r = std::sin(x); break;
      case Function::Cos: r = std::cos(x); break;
    }
    if (!std::isfinite(r)) throw SingularityError(render(where));
    return Scalar(r);
  }
};

using Env = std::map<std::string, Scalar, std::less<>>;

/// Evaluates e at env. Exact whenever e has no primitives and env is exact.
/// Throws SingularityError naming the failing subexpression.
inline Scalar eval(const Expr& e, const Env& env) {
  ScalarDomain d{&env};
  return Evaluator<Scalar, ScalarDomain>(d)(e);
}

}  // namespace jetlin
