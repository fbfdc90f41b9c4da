#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "chainlab/chains.hpp"
#include "chainlab/report.hpp"
#include "chainlab/solutions.hpp"

namespace chainlab {

/// Initial value problem for a chain member written as a first-order system
/// in (u, u', ..., u^(N-1)).
struct IVP {
  ChainEquation equation;
  double x0 = 0.0;
  std::vector<double> state;
};

struct IntegratorStats {
  long steps = 0;
  long rejected = 0;
  double minStep = 0.0;
};

struct Trajectory {
  std::vector<double> xs;
  std::vector<std::vector<double>> states;
  IntegratorStats stats;
};

/// y' = F(x, y).
using OdeSystem = std::function<void(double x, const std::vector<double>& y, std::vector<double>& dydx)>;

/// u^(N) = -(E_N - u^(N)) evaluated from the state.
OdeSystem chainSystem(const ChainEquation& eq);

/// Dormand-Prince 5(4) with PI step control, landing exactly on every grid
/// point. grid must be strictly monotone and start at x0. Throws
/// StepUnderflow when |h| < 1e-13 * |interval|.
Trajectory integrateSystem(const OdeSystem& f, const std::vector<double>& grid, std::vector<double> y0, double relTol,
                           double absTol);

/// Uniform grid with at least 64 samples per unit length (and at least 2 points).
std::vector<double> uniformGrid(double x0, double x1, int perUnit = 64, int minimum = 2);

/// Adaptive integration of a chain member from ivp.x0 to xEnd.
Trajectory integrate(const IVP& ivp, double xEnd, double relTol, double absTol);

/// Fixed-step Dormand-Prince (5th-order solution), for convergence studies.
std::vector<double> integrateFixed(const OdeSystem& f, double x0, double x1, std::vector<double> y0, long steps);

/// Observed order of the fixed-step method on u' = -u^2, u(0) = 1 over [0, 2],
/// from a least-squares fit of log error against log h.
double measureConvergenceOrder();

/// Distinct real roots of the Riccati denominator or Abel radicand in
/// [lo, hi], isolated with Sturm sequences and bisected exactly to 1e-12.
std::vector<double> poleScan(const SolutionFamily& sol, double lo, double hi);

/// First window [a, a + length] inside [lo, hi] (scanning a in steps of
/// length / 4) whose distance to every pole is at least `margin`; for Abel the
/// radicand must also be positive on it.
std::optional<std::pair<double, double>> findPoleFreeInterval(const SolutionFamily& sol, double length, double lo,
                                                              double hi, double margin);

struct CrossCheckResult {
  VerificationReport report;
  double maxDeviation = 0.0;
  int comparisonPoints = 0;
  Trajectory trajectory;
};

/// Integrates from initial conditions taken from the closed form at the left
/// end and compares with the closed form at >= 200 points. Deviation is
/// |u_num - u_exact| / max(1, |u_exact|); pass iff it stays below 100 * relTol.
/// Throws PoleInInterval for a pole in [lo, hi] and DomainError if the Abel
/// radicand is not positive there. absTol defaults to relTol.
CrossCheckResult crossCheckDetailed(ChainFamily family, int order, const std::vector<Rational>& constants, double lo,
                                    double hi, double relTol, std::optional<double> absTol = std::nullopt);
VerificationReport crossCheck(ChainFamily family, int order, const std::vector<Rational>& constants, double lo,
                              double hi, double relTol);

}  // namespace chainlab
