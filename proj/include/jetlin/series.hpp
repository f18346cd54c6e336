#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <string>
#include <vector>

#include "jetlin/eval.hpp"
#include "jetlin/scalar.hpp"

namespace jetlin {

/// Bivariate power series in (d1, d2) truncated at total degree `order`.
/// Coefficient (a, b) multiplies d1^a d2^b. Results of binary operations
/// carry the smaller of the two orders.
template <class T>
class Series2 {
 public:
  Series2() : Series2(0) {}
  explicit Series2(int order, T c = T(0)) : order_(order), c_(size_for(order), T(0)) { c_[0] = std::move(c); }

  /// at + d_which, with which in {1, 2}.
  static Series2 variable(int order, int which, T at) {
    Series2 s(order, std::move(at));
    if (order >= 1) s.coeff(which == 1 ? 1 : 0, which == 1 ? 0 : 1) = T(1);
    return s;
  }

  static std::size_t size_for(int order) { return static_cast<std::size_t>((order + 1) * (order + 2) / 2); }
  static std::size_t index(int a, int b) {
    int d = a + b;
    return static_cast<std::size_t>(d * (d + 1) / 2 + b);
  }

  int order() const { return order_; }
  const T& coeff(int a, int b) const { return c_[index(a, b)]; }
  T& coeff(int a, int b) { return c_[index(a, b)]; }
  const T& constant() const { return c_[0]; }

  Series2 truncated(int order) const {
    assert(order <= order_);
    Series2 s(order);
    std::copy(c_.begin(), c_.begin() + static_cast<long>(size_for(order)), s.c_.begin());
    return s;
  }

  /// d/d(d_which); the order drops by one.
  Series2 derivative(int which) const {
    Series2 s(std::max(order_ - 1, 0));
    if (order_ == 0) return s;
    for (int d = 0; d <= order_ - 1; ++d)
      for (int b = 0; b <= d; ++b) {
        int a = d - b;
        if (which == 1)
          s.coeff(a, b) = coeff(a + 1, b) * T(a + 1);
        else
          s.coeff(a, b) = coeff(a, b + 1) * T(b + 1);
      }
    return s;
  }

  Series2& operator+=(const Series2& o) {
    shrink(o.order_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Series2& operator-=(const Series2& o) {
    shrink(o.order_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Series2& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  friend Series2 operator+(Series2 a, const Series2& b) { return a += b; }
  friend Series2 operator-(Series2 a, const Series2& b) { return a -= b; }
  friend Series2 operator-(Series2 a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend Series2 operator*(Series2 a, const T& s) { return a *= s; }
  friend Series2 operator*(const Series2& a, const Series2& b) {
    int n = std::min(a.order_, b.order_);
    Series2 r(n);
    for (int da = 0; da <= n; ++da)
      for (int ba = 0; ba <= da; ++ba) {
        const T& x = a.coeff(da - ba, ba);
        if (x.is_zero()) continue;
        for (int db = 0; db + da <= n; ++db)
          for (int bb = 0; bb <= db; ++bb) {
            const T& y = b.coeff(db - bb, bb);
            if (y.is_zero()) continue;
            r.coeff(da - ba + db - bb, ba + bb) += x * y;
          }
      }
    return r;
  }

  /// Part without the constant term.
  Series2 nonconstant() const {
    Series2 s = *this;
    s.c_[0] = T(0);
    return s;
  }

  /// sum_n derivs[n]/n! * h^n where h is this series minus its constant.
  /// derivs[n] is the n-th derivative of a univariate function at the
  /// constant term.
  Series2 apply_univariate(const std::vector<T>& derivs) const {
    Series2 h = nonconstant();
    Series2 result(order_, derivs[0]);
    Series2 hp(order_, T(1));
    for (int n = 1; n <= order_; ++n) {
      hp = hp * h;
      result += hp * (derivs[static_cast<std::size_t>(n)] / T(factorial(n)));
    }
    return result;
  }

  /// 1/this; the constant term must be invertible.
  Series2 reciprocal() const {
    T c0 = constant();
    T inv = T(1) / c0;
    std::vector<T> derivs(static_cast<std::size_t>(order_) + 1);
    // d^n/dx^n (1/x) at c0 = (-1)^n n! / c0^(n+1)
    T p = inv;
    for (int n = 0; n <= order_; ++n) {
      derivs[static_cast<std::size_t>(n)] = (n % 2 ? -p : p) * T(factorial(n));
      p *= inv;
    }
    return apply_univariate(derivs);
  }

  /// this(s1, s2) where s1, s2 have zero constant terms.
  Series2 compose(const Series2& s1, const Series2& s2) const {
    int n = std::min({order_, s1.order_, s2.order_});
    std::vector<Series2> p1{Series2(n, T(1))}, p2{Series2(n, T(1))};
    for (int k = 1; k <= n; ++k) {
      p1.push_back(p1.back() * s1.truncated(n));
      p2.push_back(p2.back() * s2.truncated(n));
    }
    Series2 r(n);
    for (int d = 0; d <= n; ++d)
      for (int b = 0; b <= d; ++b) {
        const T& c = coeff(d - b, b);
        if (c.is_zero()) continue;
        r += (p1[static_cast<std::size_t>(d - b)] * p2[static_cast<std::size_t>(b)]) * c;
      }
    return r;
  }

  bool is_exact() const {
    return std::all_of(c_.begin(), c_.end(), [](const T& x) { return x.is_exact(); });
  }

 private:
  void shrink(int order) {
    if (order < order_) {
      c_.resize(size_for(order));
      order_ = order;
    }
  }

  int order_;
  std::vector<T> c_;
};

using ScalarSeries = Series2<Scalar>;

/// Evaluation domain for expanding an expression in a truncated series
/// around a point.
struct SeriesDomain {
  int order;
  const std::map<std::string, ScalarSeries, std::less<>>* env;

  ScalarSeries constant(const Rational& q) const { return ScalarSeries(order, Scalar(q)); }
  ScalarSeries variable(const std::string& name) const {
    auto it = env->find(name);
    if (it == env->end()) throw DomainError("unbound variable '" + name + "'");
    return it->second;
  }
  ScalarSeries reciprocal(const ScalarSeries& s, const Expr& where) const {
    if (s.constant().is_zero()) throw SingularityError(render(where));
    return s.reciprocal();
  }
  ScalarSeries apply(Function f, const ScalarSeries& a, const Expr& where) const {
    ScalarDomain sd;
    Scalar c = a.constant();
    std::vector<Scalar> d(static_cast<std::size_t>(order) + 1);
    switch (f) {
      case Function::Exp: {
        Scalar v = sd.apply(f, c, where);
        std::fill(d.begin(), d.end(), v);
        break;
      }
      case Function::Log: {
        d[0] = sd.apply(f, c, where);
        Scalar inv = Scalar(1) / c, p = inv;
        for (int n = 1; n <= order; ++n) {
          // (n-1)! (-1)^(n-1) / c^n
          Scalar t = p * Scalar(factorial(n - 1));
          d[static_cast<std::size_t>(n)] = (n % 2 ? t : -t);
          p *= inv;
        }
        break;
      }
      case Function::Sin:
      case Function::Cos: {
        Scalar s = sd.apply(Function::Sin, c, where), co = sd.apply(Function::Cos, c, where);
        const Scalar cycle[4] = {s, co, -s, -co};
        int shift = f == Function::Sin ? 0 : 1;
        for (int n = 0; n <= order; ++n) d[static_cast<std::size_t>(n)] = cycle[(n + shift) % 4];
        break;
      }
    }
    return a.apply_univariate(d);
  }
};

/// Taylor expansion of e around (x1, x2) = at, truncated at `order`.
inline ScalarSeries taylor_expand(const Expr& e, const std::array<Scalar, 2>& at, int order,
                                  const std::string& v1 = "x1", const std::string& v2 = "x2") {
  std::map<std::string, ScalarSeries, std::less<>> env{{v1, ScalarSeries::variable(order, 1, at[0])},
                                                       {v2, ScalarSeries::variable(order, 2, at[1])}};
  SeriesDomain d{order, &env};
  return Evaluator<ScalarSeries, SeriesDomain>(d)(e);
}

}  // namespace jetlin
