#pragma once

#include <cctype>
#include <charconv>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rootsieve/jet.hpp"

namespace rootsieve {

/// Parse failure with the byte offset of the offending character.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error(what + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Expression tree over the single variable `x` and the constant `pi`.
struct Expr {
  enum class Kind { Number, Var, Pi, Neg, Add, Sub, Mul, Div, Pow, Call };

  Kind kind;
  double number = 0.0;   // Kind::Number
  std::string func;      // Kind::Call
  ExprPtr a, b;          // operands; unary nodes use `a` only

  static ExprPtr make_number(double v) {
    return std::make_shared<Expr>(Expr{Kind::Number, v, {}, nullptr, nullptr});
  }
  static ExprPtr make_var() {
    return std::make_shared<Expr>(Expr{Kind::Var, 0, {}, nullptr, nullptr});
  }
  static ExprPtr make_pi() {
    return std::make_shared<Expr>(Expr{Kind::Pi, 0, {}, nullptr, nullptr});
  }
  static ExprPtr make_unary(Kind k, ExprPtr a) {
    return std::make_shared<Expr>(Expr{k, 0, {}, std::move(a), nullptr});
  }
  static ExprPtr make_binary(Kind k, ExprPtr a, ExprPtr b) {
    return std::make_shared<Expr>(Expr{k, 0, {}, std::move(a), std::move(b)});
  }
  static ExprPtr make_call(std::string fn, ExprPtr a) {
    return std::make_shared<Expr>(
        Expr{Kind::Call, 0, std::move(fn), std::move(a), nullptr});
  }
};

namespace detail {

inline bool known_function(std::string_view name) {
  return name == "sin" || name == "cos" || name == "tan" || name == "exp" ||
         name == "log" || name == "sqrt" || name == "abs";
}

// Grammar (precedence low to high):
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ['^' unary]          (right associative)
//   atom   := number | 'x' | 'pi' | func '(' expr ')' | '(' expr ')'
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != text_.size())
      throw ParseError(pos_, "unexpected character");
    return e;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr e = term();
    for (;;) {
      if (eat('+'))
        e = Expr::make_binary(Expr::Kind::Add, e, term());
      else if (eat('-'))
        e = Expr::make_binary(Expr::Kind::Sub, e, term());
      else
        return e;
    }
  }

  ExprPtr term() {
    ExprPtr e = unary();
    for (;;) {
      if (eat('*'))
        e = Expr::make_binary(Expr::Kind::Mul, e, unary());
      else if (eat('/'))
        e = Expr::make_binary(Expr::Kind::Div, e, unary());
      else
        return e;
    }
  }

  ExprPtr unary() {
    if (eat('-')) return Expr::make_unary(Expr::Kind::Neg, unary());
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    if (eat('^'))
      return Expr::make_binary(Expr::Kind::Pow, base, unary());
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw ParseError(pos_, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_')
      return identifier();
    throw ParseError(pos_, "unexpected character");
  }

  ExprPtr number() {
    const char* first = text_.data() + pos_;
    const char* last = text_.data() + text_.size();
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{}) throw ParseError(pos_, "malformed number");
    pos_ += static_cast<std::size_t>(ptr - first);
    return Expr::make_number(value);
  }

  ExprPtr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
            text_[pos_] == '_'))
      ++pos_;
    const std::string_view name = text_.substr(start, pos_ - start);
    if (name == "x") return Expr::make_var();
    if (name == "pi") return Expr::make_pi();
    if (known_function(name)) {
      if (!eat('(')) throw ParseError(pos_, "expected '(' after function name");
      ExprPtr arg = expr();
      if (!eat(')')) throw ParseError(pos_, "expected ')'");
      return Expr::make_call(std::string(name), arg);
    }
    throw ParseError(start, "unknown identifier '" + std::string(name) + "'");
  }
};

inline std::string format_number(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text) {
  return detail::Parser(text).parse();
}

/// Fully parenthesized rendering; parse(print(e)) reproduces e exactly.
inline std::string print_expression(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Number:
      return detail::format_number(e->number);
    case K::Var:
      return "x";
    case K::Pi:
      return "pi";
    case K::Neg:
      return "(-" + print_expression(e->a) + ")";
    case K::Add:
      return "(" + print_expression(e->a) + "+" + print_expression(e->b) + ")";
    case K::Sub:
      return "(" + print_expression(e->a) + "-" + print_expression(e->b) + ")";
    case K::Mul:
      return "(" + print_expression(e->a) + "*" + print_expression(e->b) + ")";
    case K::Div:
      return "(" + print_expression(e->a) + "/" + print_expression(e->b) + ")";
    case K::Pow:
      return "(" + print_expression(e->a) + "^" + print_expression(e->b) + ")";
    case K::Call:
      return e->func + "(" + print_expression(e->a) + ")";
  }
  return {};
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a->kind != b->kind) return false;
  using K = Expr::Kind;
  switch (a->kind) {
    case K::Number:
      // bit-level comparison keeps -0.0 distinct from 0.0
      return a->number == b->number &&
             std::signbit(a->number) == std::signbit(b->number);
    case K::Var:
    case K::Pi:
      return true;
    case K::Neg:
      return expr_equal(a->a, b->a);
    case K::Call:
      return a->func == b->func && expr_equal(a->a, b->a);
    default:
      return expr_equal(a->a, b->a) && expr_equal(a->b, b->b);
  }
}

/// Hyper-dual evaluation of the tree at x.
inline Jet2 eval_expression(const ExprPtr& e, double x) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::Number:
      return Jet2::constant(e->number);
    case K::Var:
      return Jet2::variable(x);
    case K::Pi:
      return Jet2::constant(3.14159265358979323846);
    case K::Neg:
      return -eval_expression(e->a, x);
    case K::Add:
      return eval_expression(e->a, x) + eval_expression(e->b, x);
    case K::Sub:
      return eval_expression(e->a, x) - eval_expression(e->b, x);
    case K::Mul:
      return eval_expression(e->a, x) * eval_expression(e->b, x);
    case K::Div:
      return eval_expression(e->a, x) / eval_expression(e->b, x);
    case K::Pow:
      return pow(eval_expression(e->a, x), eval_expression(e->b, x));
    case K::Call: {
      const Jet2 u = eval_expression(e->a, x);
      if (e->func == "sin") return sin(u);
      if (e->func == "cos") return cos(u);
      if (e->func == "tan") return tan(u);
      if (e->func == "exp") return exp(u);
      if (e->func == "log") return log(u);
      if (e->func == "sqrt") return sqrt(u);
      if (e->func == "abs") return abs(u);
      throw std::logic_error("unreachable: unknown function in tree");
    }
  }
  throw std::logic_error("unreachable: bad expression node");
}

}  // namespace rootsieve
