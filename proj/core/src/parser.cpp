#include "chainlab/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"

namespace chainlab {

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End, Invalid };

struct Token {
  Tok kind = Tok::End;
  std::size_t offset = 0;
  std::string text;
};

const std::vector<std::string> kOperand{"integer", "x", "exp", "(", "-"};
const std::vector<std::string> kAfterOperand{"+", "-", "*", "/", "^", "end of input"};

// Divisors outside the canonical class are accepted as written.
bool identicallyZero(const Expr& e) {
  if (e.isConstant()) return e.isZero();
  try {
    return isZero(e, radicandAssumptions(e));
  } catch (const Error&) {
    return false;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) { advance(); }

  Expr parse() {
    Expr e = expression();
    if (current_.kind != Tok::End) fail(kAfterOperand, "unexpected '" + current_.text + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::vector<std::string>& expected, const std::string& message) const {
    fail(current_.offset, expected, message);
  }

  [[noreturn]] static void fail(std::size_t offset, const std::vector<std::string>& expected, const std::string& message) {
    std::string list;
    for (const auto& e : expected) list += (list.empty() ? "" : ", ") + e;
    throw SyntaxError(offset, expected, message + " at offset " + std::to_string(offset) + " (expected " + list + ")");
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    current_ = Token{};
    current_.offset = pos_;
    if (pos_ >= src_.size()) {
      current_.kind = Tok::End;
      current_.text = "end of input";
      return;
    }
    const char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      current_.kind = Tok::Number;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      const std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) ++pos_;
      current_.kind = Tok::Ident;
      current_.text = std::string(src_.substr(start, pos_ - start));
      return;
    }
    ++pos_;
    current_.text = std::string(1, ch);
    switch (ch) {
      case '+': current_.kind = Tok::Plus; break;
      case '-': current_.kind = Tok::Minus; break;
      case '*': current_.kind = Tok::Star; break;
      case '/': current_.kind = Tok::Slash; break;
      case '^': current_.kind = Tok::Caret; break;
      case '(': current_.kind = Tok::LParen; break;
      case ')': current_.kind = Tok::RParen; break;
      default: current_.kind = Tok::Invalid; break;
    }
  }

  void expect(Tok kind, const std::string& text, const std::vector<std::string>& expected) {
    if (current_.kind != kind) fail(expected, "expected '" + text + "' but found '" + current_.text + "'");
    advance();
  }

  Expr expression() {
    Expr lhs = term();
    while (current_.kind == Tok::Plus || current_.kind == Tok::Minus) {
      const bool minus = current_.kind == Tok::Minus;
      advance();
      Expr rhs = term();
      lhs = minus ? lhs - rhs : lhs + rhs;
    }
    return lhs;
  }

  Expr term() {
    Expr lhs = unary();
    while (current_.kind == Tok::Star || current_.kind == Tok::Slash) {
      const bool divide = current_.kind == Tok::Slash;
      advance();
      const std::size_t at = current_.offset;
      Expr rhs = unary();
      if (divide) {
        if (identicallyZero(rhs)) fail(at, kOperand, "division by zero");
        lhs = lhs / rhs;
      } else {
        lhs = lhs * rhs;
      }
    }
    return lhs;
  }

  Expr unary() {
    if (current_.kind == Tok::Minus) {
      advance();
      return -unary();
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (current_.kind != Tok::Caret) return base;
    advance();
    const std::size_t at = current_.offset;
    Expr exponent = exponentExpr();
    if (!exponent.isConstant()) fail(at, {"rational constant"}, "exponent must be a rational constant");
    const Rational twice = exponent.value() * 2;
    if (twice.get_den() != 1) fail(at, {"integer or half-integer"}, "exponent must be an integer or half-integer");
    try {
      return Expr::power(base, exponent.value());
    } catch (const DomainError&) {
      fail(at, kOperand, "division by zero");
    }
  }

  Expr exponentExpr() {
    if (current_.kind == Tok::Minus) {
      advance();
      return -exponentExpr();
    }
    return power();
  }

  Expr primary() {
    switch (current_.kind) {
      case Tok::Number: {
        Expr e(Rational(mpz_class(current_.text, 10)));
        advance();
        return e;
      }
      case Tok::Ident: {
        if (current_.text == "x") {
          advance();
          return Expr(Var::x());
        }
        if (current_.text == "exp") {
          advance();
          expect(Tok::LParen, "(", {"("});
          Expr arg = expression();
          expect(Tok::RParen, ")", {")", "+", "-", "*", "/", "^"});
          return Expr::exp(arg);
        }
        fail(kOperand, "unknown identifier '" + current_.text + "'");
      }
      case Tok::LParen: {
        advance();
        Expr inner = expression();
        expect(Tok::RParen, ")", {")", "+", "-", "*", "/", "^"});
        return inner;
      }
      default:
        fail(kOperand, "unexpected '" + current_.text + "'");
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  Token current_;
};

}  // namespace

Expr parseExpression(std::string_view source) { return Parser(source).parse(); }

}  // namespace chainlab
