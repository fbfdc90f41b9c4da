#pragma once

#include <optional>
#include <vector>

#include "chainlab/chains.hpp"
#include "chainlab/expr.hpp"
#include "chainlab/normal_form.hpp"
#include "chainlab/report.hpp"

namespace chainlab {

/// The chain member together with the auxiliary equation v_x = flux(x, u).
struct CoveringSystem {
  ChainEquation equation;
  Expr flux;
};

/// xi d/dx + phi d/du + psi d/dv.
struct VectorField {
  Expr xi;
  Expr phi;
  Expr psi;
};

/// coefficients[k - 1] is phi^(k), k = 1..order.
struct ProlongedField {
  VectorField base;
  std::vector<Expr> coefficients;

  int order() const { return static_cast<int>(coefficients.size()); }
};

/// -m*u^m - c'/c.
Expr buildCoveringFlux(ChainFamily family);
/// (0, c*exp(v)*u, m*c*exp(v)).
VectorField buildGenerator(ChainFamily family);
CoveringSystem buildCoveringSystem(ChainFamily family, int order);

/// phi^(k) = D phi^(k-1) - u^(k) D xi with D the covering total derivative.
ProlongedField prolong(const VectorField& field, const Expr& flux, int order, const Assumptions& assumptions = {});

/// X^(N) applied to a jet polynomial (x- and v-independent).
Expr applyProlonged(const ProlongedField& field, const DiffPoly& p);

/// xi_v^2 + phi_v^2, nonzero for a genuinely nonlocal field.
Expr nonlocality(const VectorField& field);

/// The six printed determining equations of the second-order member,
/// evaluated at the given field and flux.
std::vector<Expr> determiningResiduals(ChainFamily family, const VectorField& field, const Expr& flux);

VerificationReport verifyDeterminingEquations(ChainFamily family);

/// Invariance of E_N = 0 and of v_x = f on solutions, as one entry that
/// passes iff both residuals vanish. With symbolic c the tower is bounded by
/// c^(N+2); a supplied c(x) replaces the c-tower before prolongation.
VerificationReport verifyInvariance(ChainFamily family, int order, const std::optional<Expr>& c = std::nullopt);


/// Generator and flux with c^(d) replaced by derivatives of `c`.
VectorField specialize(const VectorField& field, const Expr& c);

/// X(x) = 0 and X^(1)(u'/u + u^m) = 0.
VerificationReport checkInvariantFunctions(ChainFamily family);

}  // namespace chainlab
