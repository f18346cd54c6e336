// Recursive-descent parser for the expression grammar:
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' exponent)?
//   exponent:= ['-'] integer | '(' expr ')'      (must fold to an integer)
//   primary := integer | identifier | function '(' expr ')' | '(' expr ')'
//
// identifiers are [a-zA-Z][a-zA-Z0-9]*; functions are exp, log, sin, cos.
// Rational literals p/q are ordinary integer division folded at parse time.

#include <cctype>

#include "jetlin/errors.hpp"
#include "jetlin/expr.hpp"

namespace jetlin {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const std::set<std::string, std::less<>>& vars) : s_(text), vars_(vars) {}

  Expr run() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    while (true) {
      if (accept('+'))
        terms.push_back(term());
      else if (accept('-'))
        terms.push_back(-term());
      else
        break;
    }
    return Expr::sum(std::move(terms));
  }

  Expr term() {
    Expr acc = unary();
    while (true) {
      if (accept('*'))
        acc = acc * unary();
      else if (accept('/'))
        acc = acc / unary();
      else
        break;
    }
    return acc;
  }

  Expr unary() {
    if (accept('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!accept('^')) return base;
    skip();
    std::size_t at = pos_;
    Expr ex;
    if (accept('(')) {
      ex = expr();
      expect(')');
    } else {
      bool neg = accept('-');
      skip();
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError("exponent must be an integer", at);
      ex = integer();
      if (neg) ex = -ex;
    }
    if (!ex.is_constant() || ex.value().get_den() != 1 || !ex.value().get_num().fits_slong_p())
      throw ParseError("exponent must be an integer", at);
    return pow(base, ex.value().get_num().get_si());
  }

  Expr integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return Expr(Rational(mpz_class(std::string(s_.substr(start, pos_ - start)))));
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("unexpected end of input", pos_);
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return integer();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id(s_.substr(start, pos_ - start));
      skip();
      bool call = pos_ < s_.size() && s_[pos_] == '(';
      if (call) {
        static const std::pair<const char*, Function> fns[] = {
            {"exp", Function::Exp}, {"log", Function::Log}, {"sin", Function::Sin}, {"cos", Function::Cos}};
        for (const auto& [n, f] : fns) {
          if (id == n) {
            expect('(');
            Expr arg = expr();
            expect(')');
            return Expr::call(f, arg);
          }
        }
        throw UnknownIdentifierError(id, start);
      }
      if (!vars_.contains(id)) throw UnknownIdentifierError(id, start);
      return Expr::variable(id);
    }
    if (accept('(')) {
      Expr e = expr();
      expect(')');
      return e;
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const std::set<std::string, std::less<>>& vars_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text, const std::set<std::string, std::less<>>& variables) {
  return Parser(text, variables).run();
}

}  // namespace jetlin
