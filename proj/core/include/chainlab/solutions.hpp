#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chainlab/chains.hpp"
#include "chainlab/poly.hpp"
#include "chainlab/report.hpp"

namespace chainlab {

/// Closed-form solution in x with constants that are either rationals or the
/// symbols k_1..k_N (each constant is a Poly, usually a single term).
///   Riccati: u = numerator / denominator
///   Abel:    u = numerator / sqrt(denominator)
struct SolutionFamily {
  ChainFamily family;
  int order = 1;
  std::vector<Poly> constants;
  Poly numerator;
  Poly denominator;

  bool isRiccatiForm() const { return family.tag == FamilyTag::Riccati; }
};

struct ResidualCertificate {
  SolutionFamily solution;
  /// Residual of E_N after clearing the common power of the denominator.
  Poly residualNumerator;

  bool isZero() const { return residualNumerator.isZero(); }
};

/// Symbols k_1..k_n.
std::vector<Poly> symbolicConstants(int n);
/// Rationals as constant polynomials.
std::vector<Poly> rationalConstants(const std::vector<Rational>& values);

/// Antiderivative in x vanishing at x = 0.
Poly integrateFromZero(const Poly& p);

/// Denominator Q_N of the Riccati solution u = Q_N'/Q_N:
/// Q_1 = x + k_1, Q_N = N * int_0^x Q_(N-1) + alpha_N k_N with
/// alpha = 1, -2, -3, 4 for N <= 4 and alpha_N = N beyond.
Poly riccatiDenominator(const std::vector<Poly>& constants);
Rational riccatiConstantWeight(int index);

/// Throws DomainError unless constants.size() == N.
SolutionFamily riccatiSolution(int order, const std::vector<Poly>& constants);
/// u = P / sqrt(S), P = x^(N-1) + k_1 x^(N-2) + ... + k_(N-1), S = 2 int_0^x P^2 + k_N.
SolutionFamily abelSolution(int order, const std::vector<Poly>& constants);
SolutionFamily directSolution(ChainFamily family, int order, const std::vector<Poly>& constants);

/// u = psi'/psi for an arbitrary polynomial psi in x.
SolutionFamily linearizedRiccati(int order, const Poly& psi);
/// psi = a_0 + a_1 x + ... + a_N x^N with symbolic a_i (stored as k_(i+1)).
Poly genericPolynomial(int degree);

/// Solve the order-1 member directly, then repeatedly solve the Bernoulli
/// equation u'/u + u^m = zeta with zeta the lower Riccati solution. Each step
/// adds its own integration constant k_N (no reparameterization).
SolutionFamily recursiveSolve(ChainFamily family, int order, const std::vector<Poly>& constants);
/// Constants of the direct construction reproducing a recursive solution.
std::vector<Poly> recursiveToDirectConstants(const SolutionFamily& recursive);
/// Same function of x: cross-multiplied (Riccati) or squared (Abel) forms agree
/// and the numerators have the same sign.
bool sameSolution(const SolutionFamily& a, const SolutionFamily& b);

/// Derivative numerators: u^(j) = A_j / Q^(j+1) (Riccati) or
/// u^(j) = T_j / S^((2j+1)/2) (Abel), j = 0..count-1.
std::vector<Poly> derivativeNumerators(const SolutionFamily& sol, int count);

ResidualCertificate verifySolutionSymbolic(const ChainEquation& eq, const SolutionFamily& sol);

struct SolutionValue {
  /// Riccati: exact u. Abel: P(x), S(x) exactly; u only when S > 0.
  std::optional<Rational> exact;
  Rational numerator;
  Rational denominator;
  bool real = true;
  double approximate = 0.0;
};

/// Throws PoleAt when the denominator (or radicand) vanishes at x and
/// DomainError when the solution still carries symbolic constants.
SolutionValue evaluateSolution(const SolutionFamily& sol, const Rational& x);

/// u, u', ..., u^(count-1) at x, exact then rounded once. Throws PoleAt, DomainError (S <= 0).
std::vector<double> derivativeTower(const SolutionFamily& sol, const Rational& x, int count);

/// Printed closed forms with symbolic constants. Riccati 1..4 (order 4 keeps
/// the printed leading minus) and Abel 2..4 (radicand divided by the printed
/// square-root prefactor).
SolutionFamily printedSolution(ChainFamily family, int order);
std::string solutionText(const SolutionFamily& sol);
std::string solutionLatex(const SolutionFamily& sol);

/// Residuals of the printed forms, plus the sign-corrected fourth Riccati form.
VerificationReport verifyPrintedSolutions();

}  // namespace chainlab
