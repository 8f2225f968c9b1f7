#include "slantgeom/parse.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "slantgeom/error.hpp"

namespace slantgeom {

bool to_rational(double v, Rational& out, std::int64_t max_den) {
  if (!std::isfinite(v)) return false;
  // Continued-fraction convergents.
  std::int64_t h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double x = v;
  for (int iter = 0; iter < 64; ++iter) {
    const double a = std::floor(x);
    if (std::fabs(a) > 1e15) return false;
    const auto ai = static_cast<std::int64_t>(a);
    const std::int64_t h2 = ai * h1 + h0;
    const std::int64_t k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    const double approx = static_cast<double>(h1) / static_cast<double>(k1);
    if (std::fabs(approx - v) <= 1e-12 * std::max(1.0, std::fabs(v))) {
      out = Rational::make(h1, k1);
      return true;
    }
    const double frac = x - a;
    if (frac == 0.0) break;
    x = 1.0 / frac;
  }
  return false;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t line, std::size_t first_column)
      : text_(text), line_(line), first_column_(first_column) {}

  Expr parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail("empty expression");
    Expr e = expression();
    skip_ws();
    if (pos_ < text_.size()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const {
    throw ParseError(line_, first_column_ + pos_, message);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  // expression := term (('+' | '-') term)*
  Expr expression() {
    Expr e = term();
    for (;;) {
      if (accept('+')) {
        e = e + term();
      } else if (accept('-')) {
        e = e - term();
      } else {
        return e;
      }
    }
  }

  // term := unary (('*' | '/') unary)*
  Expr term() {
    Expr e = unary();
    for (;;) {
      if (accept('*')) {
        e = e * unary();
      } else if (accept('/')) {
        e = e / unary();
      } else {
        return e;
      }
    }
  }

  // unary := ('-' | '+') unary | power
  Expr unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  // power := primary ('^' exponent)?   (right associative through exponent)
  Expr power() {
    Expr base = primary();
    skip_ws();
    const std::size_t caret = pos_;
    if (!accept('^')) return base;
    Expr ex = unary_exponent();
    Expr folded = simplify(ex);
    if (!folded.is_constant()) {
      pos_ = caret;
      fail("exponent must be a rational constant");
    }
    Rational r;
    if (!to_rational(folded.value(), r)) {
      pos_ = caret;
      fail("exponent is not a rational number with denominator <= 1000");
    }
    return pow(base, r);
  }

  Expr unary_exponent() {
    if (accept('-')) return -unary_exponent();
    if (accept('+')) return unary_exponent();
    return power();
  }

  Expr primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expression();
      expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(std::string("unexpected '") + c + "'");
  }

  Expr number() {
    const std::string rest(text_.substr(pos_));
    char* end = nullptr;
    const double v = std::strtod(rest.c_str(), &end);
    if (end == rest.c_str()) fail("malformed number");
    pos_ += static_cast<std::size_t>(end - rest.c_str());
    return Expr(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    const std::string name(text_.substr(start, pos_ - start));
    skip_ws();
    const bool call = pos_ < text_.size() && text_[pos_] == '(';
    if (!call) {
      if (name == "pi") return Expr(std::numbers::pi);
      return Expr::variable(name);
    }
    ++pos_;
    Expr arg = expression();
    expect(')');
    if (name == "sqrt") return sqrt(arg);
    if (name == "exp") return exp(arg);
    if (name == "log" || name == "ln") return log(arg);
    if (name == "sinh") return sinh(arg);
    if (name == "cosh") return cosh(arg);
    if (name == "sin") return sin(arg);
    if (name == "cos") return cos(arg);
    if (name == "abs") return abs(arg);
    if (name == "sign" || name == "signum") return signum(arg);
    pos_ = start;
    fail("unknown function '" + name + "'");
  }

  std::string_view text_;
  std::size_t line_;
  std::size_t first_column_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(std::string_view text, std::size_t line, std::size_t first_column) {
  return Parser(text, line, first_column).parse();
}

}  // namespace slantgeom
