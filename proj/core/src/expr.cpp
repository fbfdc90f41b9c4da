#include "chainlab/expr.hpp"

#include <algorithm>
#include <functional>

#include "chainlab/errors.hpp"

namespace chainlab {

struct ExprNode {
  Expr::Kind kind = Expr::Kind::Constant;
  Rational value;  // Constant value, or the exponent of a Power
  Symbol sym;
  std::vector<Expr> operands;
};

namespace {

std::shared_ptr<const ExprNode> makeNode(Expr::Kind kind, Rational value, Symbol sym, std::vector<Expr> operands) {
  auto n = std::make_shared<ExprNode>();
  n->kind = kind;
  n->value = std::move(value);
  n->sym = sym;
  n->operands = std::move(operands);
  return n;
}

const std::shared_ptr<const ExprNode>& zeroNode() {
  static const auto node = makeNode(Expr::Kind::Constant, Rational(0), Symbol{}, {});
  return node;
}

bool isHalfInteger(const Rational& q) {
  const Rational twice = q * 2;
  return twice.get_den() == 1;
}

}  // namespace

Expr::Expr() : node_(zeroNode()) {}

Expr::Expr(const Rational& c) : node_(c == 0 ? zeroNode() : makeNode(Kind::Constant, c, Symbol{}, {})) {}

Expr::Expr(long c) : Expr(Rational(c)) {}

Expr::Expr(Symbol s) : node_(makeNode(Kind::Symbol, Rational(0), s, {})) {
  if (s.kind == VarKind::ExpV || s.kind == VarKind::ExpX) {
    throw DomainError("exp generators are not expression symbols; use Expr::exp");
  }
}

Expr::Kind Expr::kind() const { return node_->kind; }
const Rational& Expr::value() const { return node_->value; }
Symbol Expr::symbol() const { return node_->sym; }
const std::vector<Expr>& Expr::operands() const { return node_->operands; }
const Rational& Expr::exponent() const { return node_->value; }

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  Rational c(0);
  std::function<void(const Expr&)> add = [&](const Expr& t) {
    switch (t.kind()) {
      case Kind::Constant:
        c += t.value();
        break;
      case Kind::Sum:
        for (const auto& s : t.operands()) add(s);
        break;
      default:
        flat.push_back(t);
    }
  };
  for (const auto& t : terms) add(t);
  if (flat.empty()) return Expr(c);
  if (c != 0) flat.insert(flat.begin(), Expr(c));
  if (flat.size() == 1) return flat.front();
  return Expr(makeNode(Kind::Sum, Rational(0), Symbol{}, std::move(flat)));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  Rational c(1);
  std::function<void(const Expr&)> add = [&](const Expr& f) {
    switch (f.kind()) {
      case Kind::Constant:
        c *= f.value();
        break;
      case Kind::Product:
        for (const auto& s : f.operands()) add(s);
        break;
      default:
        flat.push_back(f);
    }
  };
  for (const auto& f : factors) add(f);
  if (c == 0) return Expr();
  if (flat.empty()) return Expr(c);
  if (c != 1) flat.insert(flat.begin(), Expr(c));
  if (flat.size() == 1) return flat.front();
  return Expr(makeNode(Kind::Product, Rational(0), Symbol{}, std::move(flat)));
}

Expr Expr::power(const Expr& base, const Rational& exponent) {
  if (!isHalfInteger(exponent)) {
    throw UnsupportedExpression("only integer and half-integer powers are supported, got " + exponent.get_str());
  }
  if (exponent == 0) return Expr(1L);
  if (exponent == 1) return base;
  const bool integral = isInteger(exponent);
  if (integral && base.isConstant()) {
    if (base.value() == 0 && exponent < 0) throw DomainError("division by zero");
    return Expr(chainlab::pow(base.value(), exponent.get_num().get_si()));
  }
  if (!integral && base.isConstant() && base.value() > 0) {
    const mpz_class& n = base.value().get_num();
    const mpz_class& d = base.value().get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) != 0 && mpz_perfect_square_p(d.get_mpz_t()) != 0) {
      const Rational root{mpz_class(::sqrt(n)), mpz_class(::sqrt(d))};
      return Expr(chainlab::pow(root, Rational(exponent * 2).get_num().get_si()));
    }
  }
  if (integral && base.kind() == Kind::Power) {
    return power(base.operands().front(), Rational(base.exponent() * exponent));
  }
  return Expr(makeNode(Kind::Power, exponent, Symbol{}, {base}));
}

Expr Expr::exp(const Expr& argument) {
  if (argument.isZero()) return Expr(1L);
  return Expr(makeNode(Kind::Exp, Rational(0), Symbol{}, {argument}));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expr::Kind::Constant:
      return a.value() == b.value();
    case Expr::Kind::Symbol:
      return a.symbol() == b.symbol();
    case Expr::Kind::Power:
      if (a.exponent() != b.exponent()) return false;
      break;
    default:
      break;
  }
  return a.operands() == b.operands();
}

Expr operator-(const Expr& a) {
  if (a.isConstant()) return Expr(Rational(-a.value()));
  return Expr::product({Expr(-1L), a});
}

Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }

Expr pow(const Expr& base, long exponent) { return Expr::power(base, Rational(exponent)); }

Expr sqrt(const Expr& base) { return Expr::power(base, ratio(1, 2)); }

// ------------------------------------------------------------- calculus

Expr diff(const Expr& e, Symbol s) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return Expr();
    case Expr::Kind::Symbol: {
      const Symbol t = e.symbol();
      if (t == s) return Expr(1L);
      if (t.kind == VarKind::CFun && s.kind == VarKind::X) return Expr(Var::c(t.index + 1));
      return Expr();
    }
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.operands()) terms.push_back(diff(t, s));
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto& ops = e.operands();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < ops.size(); ++i) {
        Expr d = diff(ops[i], s);
        if (d.isZero()) continue;
        std::vector<Expr> factors = ops;
        factors[i] = d;
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      const Expr& base = e.operands().front();
      Expr db = diff(base, s);
      if (db.isZero()) return Expr();
      const Rational& p = e.exponent();
      return Expr::product({Expr(p), Expr::power(base, Rational(p - 1)), db});
    }
    case Expr::Kind::Exp: {
      Expr da = diff(e.operands().front(), s);
      if (da.isZero()) return Expr();
      return Expr::product({e, da});
    }
  }
  return Expr();
}

namespace {

void collectSymbols(const Expr& e, std::set<Symbol>& out) {
  if (e.kind() == Expr::Kind::Symbol) {
    out.insert(e.symbol());
    return;
  }
  for (const auto& op : e.operands()) collectSymbols(op, out);
}

}  // namespace

std::set<Symbol> symbols(const Expr& e) {
  std::set<Symbol> out;
  collectSymbols(e, out);
  return out;
}

bool dependsOn(const Expr& e, Symbol s) {
  for (const Symbol t : symbols(e)) {
    if (t == s) return true;
    if (s.kind == VarKind::X && t.kind == VarKind::CFun) return true;
  }
  return false;
}

int maxCDerivative(const Expr& e) {
  int d = -1;
  for (const Symbol t : symbols(e)) {
    if (t.kind == VarKind::CFun) d = std::max(d, t.index);
  }
  return d;
}

Expr coveringTotalDerivative(const Expr& e, const Expr& flux) {
  std::vector<Expr> terms{diff(e, Var::x())};
  for (const Symbol s : symbols(e)) {
    switch (s.kind) {
      case VarKind::U:
        terms.push_back(Expr(Var::u(s.index + 1)) * diff(e, s));
        break;
      case VarKind::Zeta:
        terms.push_back(Expr(Var::zeta(s.index + 1)) * diff(e, s));
        break;
      case VarKind::V:
        terms.push_back(flux * diff(e, s));
        break;
      default:
        break;
    }
  }
  return Expr::sum(std::move(terms));
}

Expr totalDerivative(const Expr& e) {
  if (dependsOn(e, Var::v())) throw DomainError("totalDerivative: expression depends on v; use coveringTotalDerivative");
  return coveringTotalDerivative(e, Expr());
}

Expr substitute(const Expr& e, const std::map<Symbol, Expr>& values) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return e;
    case Expr::Kind::Symbol: {
      auto it = values.find(e.symbol());
      return it == values.end() ? e : it->second;
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      std::vector<Expr> ops;
      ops.reserve(e.operands().size());
      for (const auto& op : e.operands()) ops.push_back(substitute(op, values));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(ops)) : Expr::product(std::move(ops));
    }
    case Expr::Kind::Power:
      return Expr::power(substitute(e.operands().front(), values), e.exponent());
    case Expr::Kind::Exp:
      return Expr::exp(substitute(e.operands().front(), values));
  }
  return e;
}

Expr specializeC(const Expr& e, const Expr& c) {
  const int top = maxCDerivative(e);
  if (top < 0) return e;
  std::map<Symbol, Expr> values;
  Expr d = c;
  for (int k = 0; k <= top; ++k) {
    values.emplace(Var::c(k), d);
    d = diff(d, Var::x());
  }
  return substitute(e, values);
}

// ------------------------------------------------------------ text output

namespace {

constexpr int kSumPrec = 1;
constexpr int kProductPrec = 2;
constexpr int kFactorPrec = 3;
constexpr int kPowerPrec = 4;
constexpr int kAtomPrec = 5;

int precedenceOf(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Constant:
      return (e.value() >= 0 && isInteger(e.value())) ? kAtomPrec : kProductPrec;
    case Expr::Kind::Symbol:
    case Expr::Kind::Exp:
      return kAtomPrec;
    case Expr::Kind::Power:
      return kPowerPrec;
    case Expr::Kind::Product:
      return kProductPrec;
    case Expr::Kind::Sum:
      return kSumPrec;
  }
  return kAtomPrec;
}

bool isNegativeTerm(const Expr& t) {
  if (t.isConstant()) return t.value() < 0;
  return t.kind() == Expr::Kind::Product && t.operands().front().isConstant() && t.operands().front().value() < 0;
}

Expr negated(const Expr& t) {
  if (t.isConstant()) return Expr(Rational(-t.value()));
  std::vector<Expr> ops = t.operands();
  ops.front() = Expr(Rational(-ops.front().value()));
  return Expr::product(std::move(ops));
}

std::string emitText(const Expr& e, int minPrec);

std::string exponentText(const Rational& p) {
  if (p >= 0 && isInteger(p)) return p.get_str();
  return "(" + p.get_str() + ")";
}

std::string emitProduct(const Expr& e) {
  const auto& ops = e.operands();
  std::string s;
  bool started = false;
  std::size_t i = 0;
  if (ops.front().isConstant()) {
    const Rational& c = ops.front().value();
    if (c == -1) {
      s = "-";
    } else {
      s = c.get_str();
      started = true;
    }
    i = 1;
  }
  for (; i < ops.size(); ++i) {
    const Expr& f = ops[i];
    if (f.kind() == Expr::Kind::Power && f.exponent() == -1) {
      if (!started) s += "1";
      s += "/" + emitText(f.operands().front(), kPowerPrec);
    } else {
      if (started) s += "*";
      s += emitText(f, kFactorPrec);
    }
    started = true;
  }
  return s;
}

std::vector<Expr> constantLast(const std::vector<Expr>& terms) {
  std::vector<Expr> out(terms);
  if (out.size() > 1 && out.front().isConstant()) std::rotate(out.begin(), out.begin() + 1, out.end());
  return out;
}

std::string emitText(const Expr& e, int minPrec) {
  std::string s;
  switch (e.kind()) {
    case Expr::Kind::Constant:
      s = e.value().get_str();
      break;
    case Expr::Kind::Symbol:
      s = e.symbol().name();
      break;
    case Expr::Kind::Exp:
      s = "exp(" + emitText(e.operands().front(), 0) + ")";
      break;
    case Expr::Kind::Power:
      s = emitText(e.operands().front(), kAtomPrec) + "^" + exponentText(e.exponent());
      break;
    case Expr::Kind::Product:
      s = emitProduct(e);
      break;
    case Expr::Kind::Sum: {
      const std::vector<Expr> ops = constantLast(e.operands());
      s = emitText(ops.front(), kSumPrec);
      for (std::size_t j = 1; j < ops.size(); ++j) {
        if (isNegativeTerm(ops[j])) {
          s += " - " + emitText(negated(ops[j]), kProductPrec);
        } else {
          s += " + " + emitText(ops[j], kProductPrec);
        }
      }
      break;
    }
  }
  if (precedenceOf(e) < minPrec) return "(" + s + ")";
  return s;
}

std::string latexSymbol(Symbol s) {
  const auto subscript = [](int k) { return k == 0 ? std::string{} : "_{" + std::string(static_cast<std::size_t>(k), 'x') + "}"; };
  switch (s.kind) {
    case VarKind::X:
      return "x";
    case VarKind::U:
      return "u" + subscript(s.index);
    case VarKind::Zeta:
      return "\\zeta" + subscript(s.index);
    case VarKind::V:
      return "v";
    case VarKind::CFun:
      return "c" + subscript(s.index);
    case VarKind::Param:
      return "k_{" + std::to_string(s.index) + "}";
    case VarKind::ConstC:
      return "C";
    default:
      return s.name();
  }
}

std::string latexRational(const Rational& q) {
  if (isInteger(q)) return q.get_str();
  const std::string sign = q < 0 ? "-" : "";
  return sign + "\\frac{" + mpz_class(abs(q.get_num())).get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string emitLatex(const Expr& e, int minPrec);

std::string latexPower(const Expr& base, const Rational& p) {
  if (p == ratio(1, 2)) return "\\sqrt{" + emitLatex(base, 0) + "}";
  return emitLatex(base, kAtomPrec) + "^{" + latexRational(p) + "}";
}

std::string emitLatex(const Expr& e, int minPrec) {
  std::string s;
  switch (e.kind()) {
    case Expr::Kind::Constant:
      s = latexRational(e.value());
      break;
    case Expr::Kind::Symbol:
      s = latexSymbol(e.symbol());
      break;
    case Expr::Kind::Exp:
      s = "e^{" + emitLatex(e.operands().front(), 0) + "}";
      break;
    case Expr::Kind::Power:
      s = latexPower(e.operands().front(), e.exponent());
      break;
    case Expr::Kind::Product: {
      std::vector<std::string> num;
      std::vector<std::string> den;
      Rational c(1);
      for (const auto& f : e.operands()) {
        if (f.isConstant()) {
          c = f.value();
        } else if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
          den.push_back(latexPower(f.operands().front(), Rational(-f.exponent())));
        } else {
          num.push_back(emitLatex(f, kFactorPrec));
        }
      }
      std::string sign = c < 0 ? "-" : "";
      const Rational mag = abs(c);
      const auto join = [](const std::vector<std::string>& parts) {
        std::string out;
        for (const auto& p : parts) out += (out.empty() ? "" : " ") + p;
        return out;
      };
      if (den.empty()) {
        s = sign + (mag == 1 ? "" : latexRational(mag) + (num.empty() ? "" : " ")) + join(num);
      } else {
        std::string top = join(num);
        if (mag.get_num() != 1) top = mag.get_num().get_str() + (top.empty() ? "" : " ") + top;
        if (top.empty()) top = "1";
        std::string bottom = join(den);
        if (mag.get_den() != 1) bottom = mag.get_den().get_str() + " " + bottom;
        s = sign + "\\frac{" + top + "}{" + bottom + "}";
      }
      break;
    }
    case Expr::Kind::Sum: {
      const std::vector<Expr> ops = constantLast(e.operands());
      s = emitLatex(ops.front(), kSumPrec);
      for (std::size_t j = 1; j < ops.size(); ++j) {
        if (isNegativeTerm(ops[j])) {
          s += " - " + emitLatex(negated(ops[j]), kProductPrec);
        } else {
          s += " + " + emitLatex(ops[j], kProductPrec);
        }
      }
      break;
    }
  }
  if (precedenceOf(e) < minPrec) return "\\left(" + s + "\\right)";
  return s;
}

}  // namespace

std::string toText(const Expr& e) { return emitText(e, 0); }

std::string toLatex(const Expr& e) { return emitLatex(e, 0); }

}  // namespace chainlab
