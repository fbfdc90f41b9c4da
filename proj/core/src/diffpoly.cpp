#include "chainlab/diffpoly.hpp"

#include <algorithm>
#include <sstream>

#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"

namespace chainlab {

namespace {

bool isJet(Var v) { return v.kind == VarKind::U || v.kind == VarKind::Zeta; }

Dependent dependentOf(Var v) { return v.kind == VarKind::U ? Dependent::U : Dependent::Zeta; }

int highestJet(const JetMonomial& m) {
  int k = -1;
  for (const auto& [v, e] : m.factors()) k = std::max(k, v.index);
  return k;
}

std::string textJet(Var v) { return v.name(); }

std::string latexJet(Var v) {
  std::string base = v.kind == VarKind::U ? "u" : "\\zeta";
  if (v.index == 0) return base;
  return base + "_{" + std::string(static_cast<std::size_t>(v.index), 'x') + "}";
}

}  // namespace

DiffPoly::DiffPoly(Poly p) : poly_(std::move(p)) {
  for (const Var v : poly_.variables()) {
    if (!isJet(v)) throw DomainError("DiffPoly holds jet variables only, got " + v.name());
  }
}

DiffPoly DiffPoly::jet(Dependent dep, int order, int exponent) {
  if (order < 0) throw DomainError("negative jet order");
  return DiffPoly(Poly::variable(jetVar(dep, order), exponent));
}

DiffPoly DiffPoly::fromTerms(const std::vector<TermSpec>& terms, Dependent dep) {
  Poly p;
  for (const auto& t : terms) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [order, e] : t.jets) fs.emplace_back(jetVar(dep, order), e);
    p.addTerm(Monomial::fromFactors(std::move(fs)), Rational(t.coefficient));
  }
  return DiffPoly(std::move(p));
}

int DiffPoly::topOrder(Dependent dep) const {
  int k = -1;
  for (const auto& [m, c] : poly_.terms()) {
    for (const auto& [v, e] : m.factors()) {
      if (dependentOf(v) == dep) k = std::max(k, v.index);
    }
  }
  return k;
}

DiffPoly DiffPoly::totalDerivative() const {
  Poly out;
  for (const Var v : poly_.variables()) {
    out += poly_.derivative(v) * Poly::variable(Var{v.kind, v.index + 1});
  }
  return DiffPoly(std::move(out));
}

DiffPoly DiffPoly::partial(Dependent dep, int order) const { return DiffPoly(poly_.derivative(jetVar(dep, order))); }

DiffPoly DiffPoly::substitute(Dependent dep, int order, const DiffPoly& value) const {
  return DiffPoly(poly_.substitute(jetVar(dep, order), value.poly_));
}

DiffPoly DiffPoly::renamed(Dependent from, Dependent to) const {
  if (from == to) return *this;
  Poly out;
  for (const auto& [m, c] : poly_.terms()) {
    std::vector<Monomial::Factor> fs;
    for (const auto& [v, e] : m.factors()) {
      fs.emplace_back(dependentOf(v) == from ? jetVar(to, v.index) : v, e);
    }
    out.addTerm(Monomial::fromFactors(std::move(fs)), c);
  }
  return DiffPoly(std::move(out));
}

Expr DiffPoly::toExpr() const { return chainlab::toExpr(poly_); }

int scaledWeight(const JetMonomial& m, int exponent) {
  int w = 0;
  for (const auto& [v, e] : m.factors()) w += e * (exponent * v.index + 1);
  return w;
}

std::vector<std::pair<JetMonomial, Rational>> displayOrder(const DiffPoly& p) {
  std::vector<std::pair<JetMonomial, Rational>> out(p.terms().begin(), p.terms().end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    const int ja = highestJet(a.first);
    const int jb = highestJet(b.first);
    if (ja != jb) return ja > jb;
    const int da = a.first.totalDegree();
    const int db = b.first.totalDegree();
    if (da != db) return da > db;
    return MonomialOrder{}(b.first, a.first);
  });
  return out;
}

namespace {

template <typename JetFmt, typename PowFmt>
std::string render(const DiffPoly& p, const std::string& mul, JetFmt jetFmt, PowFmt powFmt) {
  if (p.isZero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : displayOrder(p)) {
    const Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool needMul = false;
    if (mag != 1 || m.isOne()) {
      os << mag.get_str();
      needMul = true;
    }
    // Lower jets first inside a monomial (u*u_x, u^2*u_xx).
    std::vector<Monomial::Factor> fs = m.factors();
    std::sort(fs.begin(), fs.end(), [](const auto& a, const auto& b) {
      if (a.first.kind != b.first.kind) return a.first.kind < b.first.kind;
      return a.first.index < b.first.index;
    });
    for (const auto& [v, e] : fs) {
      if (needMul) os << mul;
      os << jetFmt(v);
      if (e != 1) os << powFmt(e);
      needMul = true;
    }
  }
  return os.str();
}

}  // namespace

std::string toText(const DiffPoly& p) {
  return render(p, "*", textJet, [](int e) { return "^" + std::to_string(e); });
}

std::string toLatex(const DiffPoly& p) {
  return render(p, " ", latexJet, [](int e) { return "^{" + std::to_string(e) + "}"; });
}

}  // namespace chainlab
