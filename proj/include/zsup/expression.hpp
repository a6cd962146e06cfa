#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "zsup/error.hpp"
#include "zsup/polynomial.hpp"
#include "zsup/rational.hpp"
#include "zsup/series.hpp"

namespace zsup {

/// Expression AST for the grammar
///
///   expr   := ['+'|'-'] term (('+'|'-') term)*
///   term   := factor ('*' factor)*
///   factor := atom ('^' nat)?
///   atom   := rational | ident | '(' expr ')'
///
/// Rationals are written p or p/q. There is no implicit multiplication.
struct Expr {
  enum class Kind { Number, Symbol, Add, Sub, Mul, Pow, Neg };

  Kind kind = Kind::Number;
  Rational value;         // Number
  std::string name;       // Symbol
  unsigned exponent = 0;  // Pow
  std::vector<Expr> args;
  std::size_t line = 1;
  std::size_t column = 1;
};

/// Throws ParseError with the position of the offending token.
Expr parse_expression(std::string_view text);

/// Rendering with minimal parentheses; parse_expression(to_string(e)) is
/// structurally equivalent to e.
std::string to_string(const Expr& e);

/// Evaluates an AST in any algebra providing
///   Value constant(const Rational&) const;
///   Value symbol(const std::string&, const Expr& where) const;
///   Value add(const Value&, const Value&) const;  (and sub, mul, neg)
template <class Algebra>
auto evaluate(const Expr& e, const Algebra& algebra) -> decltype(algebra.constant(Rational())) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return algebra.constant(e.value);
    case Expr::Kind::Symbol:
      return algebra.symbol(e.name, e);
    case Expr::Kind::Add:
      return algebra.add(evaluate(e.args[0], algebra), evaluate(e.args[1], algebra));
    case Expr::Kind::Sub:
      return algebra.sub(evaluate(e.args[0], algebra), evaluate(e.args[1], algebra));
    case Expr::Kind::Mul:
      return algebra.mul(evaluate(e.args[0], algebra), evaluate(e.args[1], algebra));
    case Expr::Kind::Neg:
      return algebra.neg(evaluate(e.args[0], algebra));
    case Expr::Kind::Pow: {
      auto base = evaluate(e.args[0], algebra);
      auto result = algebra.constant(Rational(1));
      for (unsigned i = 0; i < e.exponent; ++i) result = algebra.mul(result, base);
      return result;
    }
  }
  throw ParseError("corrupt expression node", e.line, e.column);
}

/// Named series that shadow nothing: a binding may not reuse a domain
/// variable name.
using Bindings = std::map<std::string, Series, std::less<>>;

/// Evaluates to a GradedSeries over `domain`; products are normalized with
/// the sign rule. Unknown identifiers raise UnknownSymbol with the position.
Series evaluate_series(const Expr& e, const Domain& domain, const Bindings* bindings = nullptr);
Series parse_series(std::string_view text, const Domain& domain, const Bindings* bindings = nullptr);

/// Polynomial over the named base variables.
Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables);

}  // namespace zsup
