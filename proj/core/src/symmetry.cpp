#include "chainlab/symmetry.hpp"

#include <string>

#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"

namespace chainlab {

namespace {

const Expr kX(Var::x());
const Expr kU(Var::u());
const Expr kV(Var::v());

Expr c(int d = 0) { return Expr(Var::c(d)); }

// Runs `check` and turns its verdict into an entry; simplification gaps are
// inconclusive rather than failures.
template <typename Check>
CheckEntry evaluate(CheckEntry entry, Check check) {
  try {
    const Expr residual = check();
    if (isZero(residual)) {
      entry.status = CheckStatus::Pass;
      entry.residual = "0";
    } else {
      entry.status = CheckStatus::Fail;
      entry.residual = toText(simplify(residual));
    }
  } catch (const UnsupportedExpression& e) {
    entry.status = CheckStatus::Inconclusive;
    entry.detail = e.what();
  } catch (const ResourceError& e) {
    entry.status = CheckStatus::Inconclusive;
    entry.detail = e.what();
  }
  return entry;
}

}  // namespace

Expr buildCoveringFlux(ChainFamily family) {
  const int m = family.exponent();
  return Expr(-m) * pow(kU, m) - c(1) / c(0);
}

VectorField buildGenerator(ChainFamily family) {
  const Expr w = c(0) * Expr::exp(kV);
  return {Expr(0), w * kU, Expr(family.exponent()) * w};
}

CoveringSystem buildCoveringSystem(ChainFamily family, int order) {
  return {generateChain(family, order), buildCoveringFlux(family)};
}

ProlongedField prolong(const VectorField& field, const Expr& flux, int order, const Assumptions& assumptions) {
  if (order < 1) throw DomainError("prolongation order must be at least 1");
  ProlongedField out{field, {}};
  const Expr dxi = simplify(coveringTotalDerivative(field.xi, flux), assumptions);
  Expr previous = field.phi;
  for (int k = 1; k <= order; ++k) {
    previous = simplify(coveringTotalDerivative(previous, flux) - Expr(Var::u(k)) * dxi, assumptions);
    out.coefficients.push_back(previous);
  }
  return out;
}

Expr applyProlonged(const ProlongedField& field, const DiffPoly& p) {
  const Expr e = p.toExpr();
  std::vector<Expr> terms{field.base.phi * diff(e, Var::u(0))};
  const int top = p.topOrder(Dependent::U);
  if (top > field.order()) throw DomainError("prolongation order is below the polynomial's jet order");
  for (int k = 1; k <= top; ++k) terms.push_back(field.coefficients[static_cast<std::size_t>(k - 1)] * diff(e, Var::u(k)));
  return Expr::sum(std::move(terms));
}

Expr nonlocality(const VectorField& field) {
  return pow(diff(field.xi, Var::v()), 2) + pow(diff(field.phi, Var::v()), 2);
}

std::vector<Expr> determiningResiduals(ChainFamily family, const VectorField& field, const Expr& f) {
  const Symbol x = Var::x();
  const Symbol u = Var::u();
  const Symbol v = Var::v();
  const auto d = [](const Expr& e, Symbol a) { return diff(e, a); };
  const auto d2 = [](const Expr& e, Symbol a, Symbol b) { return diff(diff(e, a), b); };
  const Expr& xi = field.xi;
  const Expr& phi = field.phi;
  const Expr& psi = field.psi;
  const Expr fx = d(f, x);
  const Expr fu = d(f, u);
  const Expr f2 = pow(f, 2);
  const Expr two(2);

  std::vector<Expr> r;
  r.push_back(d2(xi, u, u));
  r.push_back(d(psi, u) - f * d(xi, u));
  if (family.tag == FamilyTag::Riccati) {
    const Expr u2 = pow(kU, 2);
    const Expr u3 = pow(kU, 3);
    r.push_back(d2(phi, u, u) - fu * d(xi, v) - two * d2(xi, u, x) - two * f * d2(xi, u, v) + Expr(6) * kU * d(xi, u));
    r.push_back(d(psi, x) + f * d(psi, v) - f * d(xi, x) - f2 * d(xi, v) - fx * xi - fu * phi);
    r.push_back(two * u3 * d(xi, x) + two * f * u3 * d(xi, v) - d(phi, u) * u3 + Expr(3) * phi * u2 +
                Expr(3) * d(phi, x) * kU + Expr(3) * f * d(phi, v) * kU + d2(phi, x, x) + f2 * d2(phi, v, v) +
                two * f * d2(phi, v, x) + fx * d(phi, v));
    r.push_back(Expr(3) * kU * d(xi, x) - d2(xi, x, x) - f2 * d2(xi, v, v) - two * f * d2(xi, v, x) +
                Expr(3) * f * kU * d(xi, v) - fx * d(xi, v) + Expr(3) * u3 * d(xi, u) + fu * d(phi, v) +
                two * d2(phi, u, x) + two * f * d2(phi, u, v) + Expr(3) * phi);
  } else {
    const Expr u2 = pow(kU, 2);
    const Expr u4 = pow(kU, 4);
    const Expr u5 = pow(kU, 5);
    r.push_back(d2(phi, u, u) - fu * d(xi, v) - two * d2(xi, u, x) - two * f * d2(xi, u, v) + Expr(8) * u2 * d(xi, u));
    r.push_back(d(psi, x) - f * d(xi, x) - f2 * d(xi, v) - fx * xi + f * d(psi, v) - fu * phi);
    r.push_back(two * u5 * d(xi, x) + two * f * u5 * d(xi, v) - d(phi, u) * u5 + Expr(5) * phi * u4 +
                Expr(4) * d(phi, x) * u2 + Expr(4) * f * d(phi, v) * u2 + d2(phi, x, x) + f2 * d2(phi, v, v) +
                two * f * d2(phi, v, x) + fx * d(phi, v));
    r.push_back(Expr(4) * u2 * d(xi, x) - d2(xi, x, x) - f2 * d2(xi, v, v) - two * f * d2(xi, v, x) -
                fx * d(xi, v) + Expr(4) * f * u2 * d(xi, v) + Expr(3) * u5 * d(xi, u) + fu * d(phi, v) +
                two * d2(phi, u, x) + two * f * d2(phi, u, v) + Expr(8) * phi * kU);
  }
  return r;
}

VerificationReport verifyDeterminingEquations(ChainFamily family) {
  VerificationReport report;
  report.subject = family.title() + " second-order determining system";
  const VectorField field = buildGenerator(family);
  const Expr flux = buildCoveringFlux(family);
  const std::vector<Expr> residuals = determiningResiduals(family, field, flux);
  for (std::size_t i = 0; i < residuals.size(); ++i) {
    CheckEntry entry;
    entry.family = family.name();
    entry.order = 2;
    entry.name = "determining equation " + std::to_string(i + 1);
    entry.anchor = family.title() + " II determining system, residual " + std::to_string(i + 1);
    report.entries.push_back(evaluate(std::move(entry), [&] { return residuals[i]; }));
  }
  return report;
}

VectorField specialize(const VectorField& field, const Expr& c) {
  return {specializeC(field.xi, c), specializeC(field.phi, c), specializeC(field.psi, c)};
}

VerificationReport verifyInvariance(ChainFamily family, int order, const std::optional<Expr>& c) {
  VerificationReport report;
  report.subject = family.title() + " order " + std::to_string(order) + " invariance";
  report.errata.push_back("first prolongation coefficient: the printed formula writes d_x u + d u_x where c_x u + c u_x "
                          "is meant; c is used throughout");
  const ChainEquation eq = generateChain(family, order);
  VectorField field = buildGenerator(family);
  Expr flux = buildCoveringFlux(family);
  Assumptions assumptions;
  if (c) {
    assumptions = radicandAssumptions(*c);
    field = specialize(field, *c);
    flux = specializeC(flux, *c);
  }
  const int maxC = order + 2;
  const auto checkTower = [&](const Expr& e) {
    if (maxCDerivative(e) > maxC) {
      throw ResourceError("c-derivative tower exceeds c^(" + std::to_string(maxC) + ")");
    }
  };

  CheckEntry entry;
  entry.family = family.name();
  entry.order = order;
  entry.name = "invariance";
  entry.anchor = family.title() + " chain order " + std::to_string(order) + " nonlocal symmetry";
  if (c) entry.detail = "c(x) = " + toText(*c);
  try {
    if (c && isZero(*c, assumptions)) throw DomainError("c(x) must not vanish identically");
    const ProlongedField pf = prolong(field, flux, order, assumptions);
    for (const auto& coefficient : pf.coefficients) checkTower(coefficient);
    const NormalForm action = canonicalize(applyProlonged(pf, eq.lhs), assumptions);
    // On solutions: u^(N) = u^(N) - E_N, applied to the numerators of both parts.
    const Poly top = Poly::variable(Var::u(order)) - eq.lhs.poly();
    const auto onSolutions = [&](const RationalFunction& r) {
      if (r.denominator().contains(Var::u(order))) {
        throw UnsupportedExpression("top derivative in a denominator of the prolonged action");
      }
      return r.numerator().substitute(Var::u(order), top);
    };
    const Poly rationalPart = onSolutions(action.rational);
    const Poly radicalPart = onSolutions(action.radicalCoefficient);
    Expr chainExpr = toExpr(rationalPart);
    if (!radicalPart.isZero()) chainExpr = chainExpr + toExpr(radicalPart) * sqrt(toExpr(*action.radicand));
    const bool chainZero = rationalPart.isZero() && radicalPart.isZero();

    const Expr dxi = coveringTotalDerivative(field.xi, flux);
    const Expr psi1 = coveringTotalDerivative(field.psi, flux) - flux * dxi;
    const Expr coveringResidual =
        psi1 - (field.xi * diff(flux, Var::x()) + field.phi * diff(flux, Var::u()) + field.psi * diff(flux, Var::v()));
    checkTower(coveringResidual);
    const bool coveringZero = isZero(coveringResidual, assumptions);

    entry.status = chainZero && coveringZero ? CheckStatus::Pass : CheckStatus::Fail;
    entry.residual = "chain: " + (chainZero ? std::string("0") : toText(chainExpr)) +
                     "; covering: " + (coveringZero ? std::string("0") : toText(simplify(coveringResidual, assumptions)));
  } catch (const UnsupportedExpression& e) {
    entry.status = CheckStatus::Inconclusive;
    entry.detail += (entry.detail.empty() ? "" : "; ") + std::string(e.what());
  } catch (const ResourceError& e) {
    entry.status = CheckStatus::Inconclusive;
    entry.detail += (entry.detail.empty() ? "" : "; ") + std::string(e.what());
  }
  report.entries.push_back(std::move(entry));
  return report;
}

VerificationReport checkInvariantFunctions(ChainFamily family) {
  VerificationReport report;
  report.subject = family.title() + " invariants";
  const VectorField field = buildGenerator(family);
  const Expr flux = buildCoveringFlux(family);

  CheckEntry z;
  z.family = family.name();
  z.order = 1;
  z.name = "invariant z = x";
  z.anchor = family.title() + " first invariant z = x";
  report.entries.push_back(evaluate(std::move(z), [&] { return field.xi * diff(kX, Var::x()); }));

  CheckEntry zeta;
  zeta.family = family.name();
  zeta.order = 1;
  zeta.name = "invariant zeta = u_x/u + u^m";
  zeta.anchor = family.title() + " second invariant zeta = u_x/u + u^" + std::to_string(family.exponent());
  report.entries.push_back(evaluate(std::move(zeta), [&] {
    const Expr inv = Expr(Var::u(1)) / kU + pow(kU, family.exponent());
    const ProlongedField pf = prolong(field, flux, 1);
    return field.xi * diff(inv, Var::x()) + field.phi * diff(inv, Var::u()) + field.psi * diff(inv, Var::v()) +
           pf.coefficients.front() * diff(inv, Var::u(1));
  }));
  return report;
}

}  // namespace chainlab
