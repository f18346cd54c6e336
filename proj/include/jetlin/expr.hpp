#pragma once

#include <map>
#include <memory>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "jetlin/scalar.hpp"

namespace jetlin {

enum class Function { Exp, Log, Sin, Cos };

std::string_view function_name(Function f);

class Expr;
struct ExprNode;

/// Immutable symbolic expression over rational constants. Copies share
/// structure; every operation returns a new value.
///
/// The smart constructors fold constants and flatten nested sums and
/// products, but do not collect like terms. Use normalize() for a canonical
/// form.
class Expr {
 public:
  enum class Kind { Constant, Variable, Sum, Product, Power, Quotient, Call };

  Expr();  // the constant 0
  Expr(int n);
  Expr(long n);
  Expr(Rational q);

  static Expr constant(Rational q);
  static Expr variable(std::string name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr power(Expr base, long exponent);
  static Expr quotient(Expr numerator, Expr denominator);
  static Expr call(Function f, Expr argument);

  Kind kind() const;
  /// Constant value; only valid for Kind::Constant.
  const Rational& value() const;
  /// Variable name; only valid for Kind::Variable.
  const std::string& name() const;
  /// Sum terms, product factors, {base} for Power, {num, den} for Quotient,
  /// {argument} for Call.
  std::span<const Expr> operands() const;
  long exponent() const;
  Function function() const;

  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;

  /// Structural equality (not mathematical equality).
  friend bool operator==(const Expr& a, const Expr& b);

  const ExprNode* node() const { return node_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  Expr::Kind kind;
  Rational value;
  std::string name;
  std::vector<Expr> operands;
  long exponent = 0;
  Function function = Function::Exp;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr pow(const Expr& base, long exponent);
Expr exp(const Expr& a);
Expr log(const Expr& a);
Expr sin(const Expr& a);
Expr cos(const Expr& a);

/// Renders in the input grammar; parse(render(e)) normalizes to normalize(e).
std::string render(const Expr& e);

/// Partial derivative. Total on the representable set.
Expr diff(const Expr& e, std::string_view variable);

Expr substitute(const Expr& e, const std::map<std::string, Expr, std::less<>>& replacements);
Expr rename(const Expr& e, const std::map<std::string, std::string, std::less<>>& names);

std::set<std::string> free_variables(const Expr& e);
bool contains_call(const Expr& e);
std::size_t node_count(const Expr& e);

/// Parses the documented grammar. Identifiers outside `variables` (and not
/// one of exp/log/sin/cos followed by a parenthesis) are rejected.
Expr parse(std::string_view text, const std::set<std::string, std::less<>>& variables);

}  // namespace jetlin
