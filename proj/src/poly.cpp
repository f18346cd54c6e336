#include "jetlin/poly.hpp"

#include <algorithm>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>

#include "jetlin/errors.hpp"

namespace jetlin {

namespace {

struct TableState {
  std::shared_mutex mutex;
  std::unordered_map<std::string, VarId> ids;
  std::vector<std::string> names;
  std::vector<std::optional<Expr>> atoms;
};

TableState& table() {
  static TableState t;
  return t;
}

VarId intern_impl(const std::string& key, std::optional<Expr> atom) {
  auto& t = table();
  {
    std::shared_lock lock(t.mutex);
    auto it = t.ids.find(key);
    if (it != t.ids.end()) return it->second;
  }
  std::unique_lock lock(t.mutex);
  auto it = t.ids.find(key);
  if (it != t.ids.end()) return it->second;
  VarId id = static_cast<VarId>(t.names.size());
  t.names.push_back(key);
  t.atoms.push_back(std::move(atom));
  t.ids.emplace(key, id);
  return id;
}

}  // namespace

VarId VarTable::intern(std::string_view name) { return intern_impl(std::string(name), std::nullopt); }

VarId VarTable::intern_atom(const Expr& call) { return intern_impl(render(call), call); }

std::string VarTable::name(VarId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.names.at(id);
}

bool VarTable::is_atom(VarId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  return t.atoms.at(id).has_value();
}

Expr VarTable::atom(VarId id) {
  auto& t = table();
  std::shared_lock lock(t.mutex);
  const auto& a = t.atoms.at(id);
  if (!a) throw DomainError("indeterminate is not an atom");
  return *a;
}

std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  std::uint32_t da = total_degree(a), db = total_degree(b);
  if (da != db) return da < db;
  return a < b;
}

Monomial monomial_mul(const Monomial& a, const Monomial& b) {
  Monomial r;
  r.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      r.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      r.push_back(b[j++]);
    } else {
      r.emplace_back(a[i].first, a[i].second + b[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

Poly::Poly(Rational c) {
  if (sgn(c) != 0) terms_.emplace(Monomial{}, std::move(c));
}

Poly Poly::variable(VarId v) { return term(Monomial{{v, 1}}, Rational(1)); }

Poly Poly::term(Monomial m, Rational c) {
  Poly p;
  if (sgn(c) != 0) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Poly::constant_term() const {
  auto it = terms_.find(Monomial{});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::uint32_t Poly::degree() const { return terms_.empty() ? 0 : total_degree(terms_.rbegin()->first); }

std::uint32_t Poly::degree_in(VarId v) const {
  std::uint32_t d = 0;
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m)
      if (w == v) d = std::max(d, e);
  return d;
}

std::vector<VarId> Poly::variables() const {
  std::vector<VarId> vs;
  for (const auto& [m, c] : terms_)
    for (const auto& [w, e] : m) vs.push_back(w);
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool Poly::contains_atom() const {
  for (VarId v : variables())
    if (VarTable::is_atom(v)) return true;
  return false;
}

std::vector<Poly> Poly::coefficients_in(VarId v) const {
  std::vector<Poly> out(degree_in(v) + 1);
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    std::uint32_t e = 0;
    for (const auto& pe : m) {
      if (pe.first == v)
        e = pe.second;
      else
        rest.push_back(pe);
    }
    out[e] += term(rest, c);
  }
  return out;
}

Poly Poly::derivative(VarId v) const {
  Poly r;
  for (const auto& [m, c] : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i].first != v) continue;
      Monomial d = m;
      std::uint32_t e = d[i].second;
      if (e == 1)
        d.erase(d.begin() + static_cast<long>(i));
      else
        d[i].second = e - 1;
      r += term(std::move(d), c * e);
    }
  }
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) {
    auto [it, inserted] = terms_.try_emplace(m, -c);
    if (!inserted) {
      it->second -= c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Rational c = ca * cb;
      auto [it, inserted] = r.terms_.try_emplace(monomial_mul(ma, mb), c);
      if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0) r.terms_.erase(it);
      }
    }
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1), b = *this;
  while (n > 0) {
    if (n & 1) result = result * b;
    n >>= 1;
    if (n) b = b * b;
  }
  return result;
}

bool operator<(const Poly& a, const Poly& b) {
  return std::lexicographical_compare(
      a.terms_.begin(), a.terms_.end(), b.terms_.begin(), b.terms_.end(), [](const auto& x, const auto& y) {
        MonomialOrder ord;
        if (ord(x.first, y.first)) return true;
        if (ord(y.first, x.first)) return false;
        return x.second < y.second;
      });
}

Scalar Poly::evaluate(const std::function<Scalar(VarId)>& value) const {
  return evaluate<Scalar>(value, [](const Rational& q) { return Scalar(q); });
}

std::optional<Poly> Poly::exact_divide(const Poly& divisor) const {
  if (divisor.is_zero()) throw SingularityError("division by the zero polynomial");
  Poly rem = *this, quot;
  const auto& [lm, lc] = divisor.leading();
  while (!rem.is_zero()) {
    const auto& [rm, rc] = rem.leading();
    // rm must be divisible by lm
    Monomial q;
    std::size_t j = 0;
    for (const auto& [v, e] : rm) {
      while (j < lm.size() && lm[j].first < v) return std::nullopt;
      if (j < lm.size() && lm[j].first == v) {
        if (lm[j].second > e) return std::nullopt;
        if (e > lm[j].second) q.emplace_back(v, e - lm[j].second);
        ++j;
      } else {
        q.emplace_back(v, e);
      }
    }
    if (j != lm.size()) return std::nullopt;
    Poly t = term(q, rc / lc);
    quot += t;
    rem -= t * divisor;
  }
  return quot;
}

Expr Poly::to_expr() const {
  struct Item {
    std::uint32_t degree;
    std::vector<std::pair<std::string, std::uint32_t>> vars;
    const Rational* c;
    const Monomial* m;
  };
  std::vector<Item> items;
  for (const auto& [m, c] : terms_) {
    Item it{total_degree(m), {}, &c, &m};
    for (const auto& [v, e] : m) it.vars.emplace_back(VarTable::name(v), e);
    std::sort(it.vars.begin(), it.vars.end());
    items.push_back(std::move(it));
  }
  // Descending graded order, lexicographic on names.
  std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    if (a.degree != b.degree) return a.degree > b.degree;
    return a.vars < b.vars;
  });
  std::vector<Expr> terms;
  for (const Item& it : items) {
    std::vector<Expr> factors{Expr(*it.c)};
    std::vector<std::pair<std::string, Expr>> named;
    for (const auto& [v, e] : *it.m) {
      Expr base = VarTable::is_atom(v) ? VarTable::atom(v) : Expr::variable(VarTable::name(v));
      named.emplace_back(VarTable::name(v), jetlin::pow(base, static_cast<long>(e)));
    }
    std::sort(named.begin(), named.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [n, f] : named) factors.push_back(f);
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

}  // namespace jetlin
