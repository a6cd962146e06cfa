#include "zsup/expression.hpp"

#include <cctype>

namespace zsup {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_, column = column_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::End, "", line, column});
        return out;
      }
      const char c = text_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = take_digits();
        if (pos_ + 1 < text_.size() && text_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
          advance();
          num += '/' + take_digits();
        }
        out.push_back({Tok::Number, num, line, column});
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string id;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
          id += text_[pos_];
          advance();
        }
        out.push_back({Tok::Ident, id, line, column});
      } else {
        Tok kind;
        switch (c) {
          case '+': kind = Tok::Plus; break;
          case '-': kind = Tok::Minus; break;
          case '*': kind = Tok::Star; break;
          case '^': kind = Tok::Caret; break;
          case '(': kind = Tok::LParen; break;
          case ')': kind = Tok::RParen; break;
          default:
            throw ParseError(std::string("unexpected character '") + c + "'", line, column);
        }
        advance();
        out.push_back({kind, std::string(1, c), line, column});
      }
    }
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) advance();
  }
  std::string take_digits() {
    std::string s;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      s += text_[pos_];
      advance();
    }
    return s;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Expr parse() {
    Expr e = expr();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_++]; }
  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, peek().line, peek().column); }

  static Expr node(Expr::Kind kind, const Token& at, std::vector<Expr> args) {
    Expr e;
    e.kind = kind;
    e.line = at.line;
    e.column = at.column;
    e.args = std::move(args);
    return e;
  }

  Expr expr() {
    Expr lhs;
    if (peek().kind == Tok::Minus) {
      const Token& op = next();
      lhs = node(Expr::Kind::Neg, op, {term()});
    } else {
      if (peek().kind == Tok::Plus) next();
      lhs = term();
    }
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      const Token& op = next();
      auto kind = op.kind == Tok::Plus ? Expr::Kind::Add : Expr::Kind::Sub;
      lhs = node(kind, op, {std::move(lhs), term()});
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = factor();
    while (peek().kind == Tok::Star) {
      const Token& op = next();
      lhs = node(Expr::Kind::Mul, op, {std::move(lhs), factor()});
    }
    return lhs;
  }

  Expr factor() {
    Expr base = atom();
    if (peek().kind == Tok::Caret) {
      const Token& op = next();
      if (peek().kind != Tok::Number || peek().text.find('/') != std::string::npos) {
        fail("expected a natural exponent");
      }
      const Token& n = next();
      Expr e = node(Expr::Kind::Pow, op, {std::move(base)});
      try {
        e.exponent = static_cast<unsigned>(std::stoul(n.text));
      } catch (const std::exception&) {
        throw ParseError("exponent too large", n.line, n.column);
      }
      return e;
    }
    return base;
  }

  Expr atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        Expr e = node(Expr::Kind::Number, t, {});
        try {
          e.value = parse_rational(t.text);
        } catch (const ValidationError& err) {
          throw ParseError(err.what(), t.line, t.column);
        }
        return e;
      }
      case Tok::Ident: {
        next();
        Expr e = node(Expr::Kind::Symbol, t, {});
        e.name = t.text;
        return e;
      }
      case Tok::LParen: {
        next();
        Expr inner = expr();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        next();
        return inner;
      }
      case Tok::End:
        fail("unexpected end of input");
      default:
        fail("unexpected '" + t.text + "'");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

int precedence(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub:
    case Expr::Kind::Neg:
      return 1;
    case Expr::Kind::Mul:
      return 2;
    case Expr::Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

std::string wrap(const Expr& e, int min_precedence) {
  std::string s = to_string(e);
  return precedence(e) < min_precedence ? "(" + s + ")" : s;
}

class SeriesAlgebra {
 public:
  SeriesAlgebra(const Domain& domain, const Bindings* bindings) : domain_(domain), bindings_(bindings) {}

  Series constant(const Rational& c) const { return Series::constant(domain_, c); }
  Series symbol(const std::string& name, const Expr& where) const {
    if (bindings_) {
      if (auto it = bindings_->find(name); it != bindings_->end()) {
        if (!same_domain(it->second.domain(), domain_)) {
          throw DomainMismatch("binding '" + name + "' lives in a different domain");
        }
        return it->second;
      }
    }
    if (!domain_->base_index(name) && !domain_->formal_index(name)) {
      throw UnknownSymbol("unknown identifier '" + name + "' at line " + std::to_string(where.line) +
                          ", column " + std::to_string(where.column));
    }
    return Series::variable(domain_, name);
  }
  Series add(const Series& a, const Series& b) const { return a + b; }
  Series sub(const Series& a, const Series& b) const { return a - b; }
  Series mul(const Series& a, const Series& b) const { return a * b; }
  Series neg(const Series& a) const { return -a; }

 private:
  const Domain& domain_;
  const Bindings* bindings_;
};

class PolynomialAlgebra {
 public:
  explicit PolynomialAlgebra(const std::vector<std::string>& vars) : vars_(vars) {}

  Polynomial constant(const Rational& c) const { return Polynomial::constant(vars_.size(), c); }
  Polynomial symbol(const std::string& name, const Expr& where) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return Polynomial::variable(vars_.size(), i);
    }
    throw UnknownSymbol("unknown identifier '" + name + "' at line " + std::to_string(where.line) + ", column " +
                        std::to_string(where.column));
  }
  Polynomial add(const Polynomial& a, const Polynomial& b) const { return a + b; }
  Polynomial sub(const Polynomial& a, const Polynomial& b) const { return a - b; }
  Polynomial mul(const Polynomial& a, const Polynomial& b) const { return a * b; }
  Polynomial neg(const Polynomial& a) const { return -a; }

 private:
  const std::vector<std::string>& vars_;
};

}  // namespace

Expr parse_expression(std::string_view text) { return Parser(Lexer(text).run()).parse(); }

std::string to_string(const Expr& e) {
  switch (e.kind) {
    case Expr::Kind::Number:
      return zsup::to_string(e.value);
    case Expr::Kind::Symbol:
      return e.name;
    case Expr::Kind::Add:
      return to_string(e.args[0]) + " + " + wrap(e.args[1], 2);
    case Expr::Kind::Sub:
      return to_string(e.args[0]) + " - " + wrap(e.args[1], 2);
    case Expr::Kind::Neg:
      return "-" + wrap(e.args[0], 2);
    case Expr::Kind::Mul:
      return wrap(e.args[0], 2) + "*" + wrap(e.args[1], 3);
    case Expr::Kind::Pow:
      return wrap(e.args[0], 4) + "^" + std::to_string(e.exponent);
  }
  return {};
}

Series evaluate_series(const Expr& e, const Domain& domain, const Bindings* bindings) {
  return evaluate(e, SeriesAlgebra(domain, bindings));
}

Series parse_series(std::string_view text, const Domain& domain, const Bindings* bindings) {
  return evaluate_series(parse_expression(text), domain, bindings);
}

Polynomial parse_polynomial(std::string_view text, const std::vector<std::string>& variables) {
  return evaluate(parse_expression(text), PolynomialAlgebra(variables));
}

}  // namespace zsup
