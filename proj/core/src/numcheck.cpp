#include "chainlab/numcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "chainlab/errors.hpp"

namespace chainlab {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561, A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784, B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920, E5 = -17253.0 / 339200, E6 = 22.0 / 525,
                 E7 = -1.0 / 40;

constexpr long kMaxSteps = 10'000'000;

class Stepper {
 public:
  Stepper(const OdeSystem& f, std::size_t n) : f_(f), k_(7, std::vector<double>(n)), tmp_(n) {}

  /// One step from (x, y) with derivative k1 = f(x, y) already in k_[0].
  /// Writes the 5th-order result to yOut and the error estimate to err.
  void step(double x, const std::vector<double>& y, double h, std::vector<double>& yOut, std::vector<double>& err) {
    const std::size_t n = y.size();
    auto& k = k_;
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * A21 * k[0][i];
    f_(x + C2 * h, tmp_, k[1]);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (A31 * k[0][i] + A32 * k[1][i]);
    f_(x + C3 * h, tmp_, k[2]);
    for (std::size_t i = 0; i < n; ++i) tmp_[i] = y[i] + h * (A41 * k[0][i] + A42 * k[1][i] + A43 * k[2][i]);
    f_(x + C4 * h, tmp_, k[3]);
    for (std::size_t i = 0; i < n; ++i) {
      tmp_[i] = y[i] + h * (A51 * k[0][i] + A52 * k[1][i] + A53 * k[2][i] + A54 * k[3][i]);
    }
    f_(x + C5 * h, tmp_, k[4]);
    for (std::size_t i = 0; i < n; ++i) {
      tmp_[i] = y[i] + h * (A61 * k[0][i] + A62 * k[1][i] + A63 * k[2][i] + A64 * k[3][i] + A65 * k[4][i]);
    }
    f_(x + h, tmp_, k[5]);
    for (std::size_t i = 0; i < n; ++i) {
      yOut[i] = y[i] + h * (B1 * k[0][i] + B3 * k[2][i] + B4 * k[3][i] + B5 * k[4][i] + B6 * k[5][i]);
    }
    f_(x + h, yOut, k[6]);
    for (std::size_t i = 0; i < n; ++i) {
      err[i] = h * (E1 * k[0][i] + E3 * k[2][i] + E4 * k[3][i] + E5 * k[4][i] + E6 * k[5][i] + E7 * k[6][i]);
    }
  }

  std::vector<double>& first() { return k_[0]; }
  /// FSAL: the last stage of an accepted step is the first of the next.
  void acceptLast() { std::swap(k_[0], k_[6]); }

 private:
  const OdeSystem& f_;
  std::vector<std::vector<double>> k_;
  std::vector<double> tmp_;
};

bool allFinite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double d) { return std::isfinite(d); });
}

double errorNorm(const std::vector<double>& err, const std::vector<double>& y, const std::vector<double>& yNew,
                 double relTol, double absTol) {
  double sum = 0.0;
  for (std::size_t i = 0; i < err.size(); ++i) {
    const double sc = absTol + relTol * std::max(std::abs(y[i]), std::abs(yNew[i]));
    const double r = err[i] / sc;
    sum += r * r;
  }
  const double norm = std::sqrt(sum / static_cast<double>(err.size()));
  return std::isfinite(norm) ? norm : std::numeric_limits<double>::infinity();
}

double initialStep(const OdeSystem& f, double x0, const std::vector<double>& y0, const std::vector<double>& f0,
                   double direction, double relTol, double absTol, double span) {
  const std::size_t n = y0.size();
  double d0 = 0.0;
  double d1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = absTol + relTol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / static_cast<double>(n));
  d1 = std::sqrt(d1 / static_cast<double>(n));
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  std::vector<double> y1(n);
  std::vector<double> f1(n);
  for (std::size_t i = 0; i < n; ++i) y1[i] = y0[i] + direction * h0 * f0[i];
  f(x0 + direction * h0, y1, f1);
  double d2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = absTol + relTol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / static_cast<double>(n)) / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  double h = std::min(100.0 * h0, h1);
  if (!std::isfinite(h) || h <= 0.0) h = 1e-6 * span;
  return std::min(h, span);
}

struct CompiledTerm {
  double coefficient;
  std::vector<std::pair<int, int>> factors;  // (jet order, exponent)
};

}  // namespace

OdeSystem chainSystem(const ChainEquation& eq) {
  const int n = eq.order;
  std::vector<CompiledTerm> rest;
  for (const auto& [m, c] : eq.lhs.terms()) {
    if (m.degree(Var::u(n)) == 1 && m.factors().size() == 1) {
      if (c != 1) throw DomainError("chain member is not monic in its top derivative");
      continue;
    }
    if (m.degree(Var::u(n)) != 0) throw DomainError("chain member is not linear in its top derivative");
    CompiledTerm t{c.get_d(), {}};
    for (const auto& [v, e] : m.factors()) t.factors.emplace_back(v.index, e);
    rest.push_back(std::move(t));
  }
  return [n, rest = std::move(rest)](double, const std::vector<double>& y, std::vector<double>& dy) {
    for (int i = 0; i + 1 < n; ++i) dy[static_cast<std::size_t>(i)] = y[static_cast<std::size_t>(i + 1)];
    double top = 0.0;
    for (const auto& t : rest) {
      double v = t.coefficient;
      for (const auto& [k, e] : t.factors) {
        const double base = y[static_cast<std::size_t>(k)];
        for (int j = 0; j < e; ++j) v *= base;
      }
      top += v;
    }
    dy[static_cast<std::size_t>(n - 1)] = -top;
  };
}

std::vector<double> uniformGrid(double x0, double x1, int perUnit, int minimum) {
  const double span = std::abs(x1 - x0);
  const long intervals = std::max<long>(std::max(minimum, 2) - 1, static_cast<long>(std::ceil(perUnit * span)));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(intervals + 1));
  for (long i = 0; i < intervals; ++i) grid.push_back(x0 + (x1 - x0) * static_cast<double>(i) / static_cast<double>(intervals));
  grid.push_back(x1);
  return grid;
}

Trajectory integrateSystem(const OdeSystem& f, const std::vector<double>& grid, std::vector<double> y0, double relTol,
                           double absTol) {
  if (!(relTol > 0.0) || !(absTol > 0.0)) throw DomainError("tolerances must be positive");
  if (grid.size() < 2) throw DomainError("output grid needs at least two points");
  if (y0.empty()) throw DomainError("empty initial state");
  if (!allFinite(y0)) throw DomainError("initial state is not finite");
  const double direction = grid.back() > grid.front() ? 1.0 : -1.0;
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if ((grid[i] - grid[i - 1]) * direction <= 0.0) throw DomainError("output grid must be strictly monotone");
  }
  const double span = std::abs(grid.back() - grid.front());
  const double hMin = 1e-13 * span;
  const std::size_t n = y0.size();

  Trajectory out;
  out.xs.push_back(grid.front());
  out.states.push_back(y0);
  out.stats.minStep = span;

  Stepper stepper(f, n);
  double x = grid.front();
  std::vector<double> y = std::move(y0);
  f(x, y, stepper.first());
  double h = initialStep(f, x, y, stepper.first(), direction, relTol, absTol, span);
  double errPrev = 1e-4;
  std::vector<double> yNew(n);
  std::vector<double> err(n);

  for (std::size_t g = 1; g < grid.size(); ++g) {
    const double target = grid[g];
    while ((target - x) * direction > 0.0) {
      if (out.stats.steps + out.stats.rejected >= kMaxSteps) throw ResourceError("integrator step limit reached");
      const double remaining = std::abs(target - x);
      const bool last = h >= remaining;
      const double hStep = last ? remaining : h;
      stepper.step(x, y, direction * hStep, yNew, err);
      const double e = allFinite(yNew) ? errorNorm(err, y, yNew, relTol, absTol) : std::numeric_limits<double>::infinity();
      if (e <= 1.0) {
        x = last ? target : x + direction * hStep;
        y.swap(yNew);
        stepper.acceptLast();
        ++out.stats.steps;
        out.stats.minStep = std::min(out.stats.minStep, hStep);
        double factor = 0.9 * std::pow(std::max(e, 1e-10), -0.17) * std::pow(errPrev, 0.04);
        factor = std::clamp(factor, 0.2, 10.0);
        errPrev = std::max(e, 1e-4);
        // A step shortened to hit the grid says nothing about the next one.
        if (!last || hStep >= h) h = hStep * factor;
      } else {
        ++out.stats.rejected;
        const double factor = std::isfinite(e) ? std::max(0.2, 0.9 * std::pow(e, -0.2)) : 0.2;
        h = hStep * factor;
      }
      if (h < hMin) {
        throw StepUnderflow(x, "step size underflow at x = " + std::to_string(x) + " (likely a pole or blow-up)");
      }
    }
    out.xs.push_back(target);
    out.states.push_back(y);
  }
  return out;
}

Trajectory integrate(const IVP& ivp, double xEnd, double relTol, double absTol) {
  if (static_cast<int>(ivp.state.size()) != ivp.equation.order) {
    throw DomainError("initial state length must equal the chain order");
  }
  if (xEnd == ivp.x0) throw DomainError("integration interval is empty");
  return integrateSystem(chainSystem(ivp.equation), uniformGrid(ivp.x0, xEnd), ivp.state, relTol, absTol);
}

std::vector<double> integrateFixed(const OdeSystem& f, double x0, double x1, std::vector<double> y0, long steps) {
  if (steps < 1) throw DomainError("at least one step is required");
  Stepper stepper(f, y0.size());
  std::vector<double> yNew(y0.size());
  std::vector<double> err(y0.size());
  const double h = (x1 - x0) / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double x = x0 + h * static_cast<double>(i);
    f(x, y0, stepper.first());
    stepper.step(x, y0, h, yNew, err);
    y0.swap(yNew);
  }
  return y0;
}

double measureConvergenceOrder() {
  const OdeSystem f = [](double, const std::vector<double>& y, std::vector<double>& dy) { dy[0] = -y[0] * y[0]; };
  const double exact = 1.0 / 3.0;
  std::vector<double> logH;
  std::vector<double> logE;
  for (long steps = 10; steps <= 160; steps *= 2) {
    const double u = integrateFixed(f, 0.0, 2.0, {1.0}, steps).front();
    logH.push_back(std::log(2.0 / static_cast<double>(steps)));
    logE.push_back(std::log(std::abs(u - exact)));
  }
  const auto n = static_cast<double>(logH.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < logH.size(); ++i) {
    sx += logH[i];
    sy += logE[i];
    sxx += logH[i] * logH[i];
    sxy += logH[i] * logE[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

void requireNumeric(const Poly& p) {
  for (const Var v : p.variables()) {
    if (v != Var::x()) throw DomainError("pole scan needs rational constants, found " + v.name());
  }
}

void isolate(const Poly& p, const Rational& lo, const Rational& hi, int count, const Rational& width,
             std::vector<Rational>& roots) {
  if (count == 0) return;
  if (count == 1 && p.evaluate({{Var::x(), hi}}) == 0) {
    roots.push_back(hi);
    return;
  }
  if (hi - lo < width) {
    roots.push_back((lo + hi) / 2);
    return;
  }
  const Rational mid = (lo + hi) / 2;
  const int left = univariate::sturmCount(p, Var::x(), lo, mid);
  isolate(p, lo, mid, left, width, roots);
  isolate(p, mid, hi, count - left, width, roots);
}

}  // namespace

std::vector<double> poleScan(const SolutionFamily& sol, double lo, double hi) {
  requireNumeric(sol.denominator);
  if (lo > hi) std::swap(lo, hi);
  const Poly p = univariate::squarefree(sol.denominator, Var::x());
  const Rational a(lo);
  const Rational b(hi);
  std::vector<Rational> roots;
  if (p.evaluate({{Var::x(), a}}) == 0) roots.push_back(a);
  if (p.isConstant()) return {};
  isolate(p, a, b, univariate::sturmCount(p, Var::x(), a, b), Rational(1e-12), roots);
  std::vector<double> out;
  for (const auto& r : roots) out.push_back(r.get_d());
  return out;
}

std::optional<std::pair<double, double>> findPoleFreeInterval(const SolutionFamily& sol, double length, double lo,
                                                              double hi, double margin) {
  const std::vector<double> poles = poleScan(sol, lo - margin, hi + margin);
  for (double a = lo; a + length <= hi; a += length / 4) {
    const double b = a + length;
    const bool clear = std::none_of(poles.begin(), poles.end(),
                                    [&](double p) { return p > a - margin && p < b + margin; });
    if (!clear) continue;
    if (!sol.isRiccatiForm() && sol.denominator.evaluate({{Var::x(), Rational(a)}}) <= 0) continue;
    return std::make_pair(a, b);
  }
  return std::nullopt;
}

CrossCheckResult crossCheckDetailed(ChainFamily family, int order, const std::vector<Rational>& constants, double lo,
                                    double hi, double relTol, std::optional<double> absTol) {
  if (!(hi > lo)) throw DomainError("cross-check interval must satisfy lo < hi");
  if (!(relTol > 0.0)) throw DomainError("relative tolerance must be positive");
  if (absTol && !(*absTol > 0.0)) throw DomainError("absolute tolerance must be positive");
  const SolutionFamily sol = directSolution(family, order, rationalConstants(constants));
  const std::vector<double> poles = poleScan(sol, lo, hi);
  if (!poles.empty()) {
    throw PoleInInterval(poles.front(), "closed form has a pole at x = " + std::to_string(poles.front()) +
                                            " inside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const Rational x0(lo);
  if (!sol.isRiccatiForm() && sol.denominator.evaluate({{Var::x(), x0}}) < 0) {
    throw DomainError("radicand is negative on the interval; the closed form is not real there");
  }

  CrossCheckResult result;
  result.report.subject = family.title() + " order " + std::to_string(order) + " numerical cross-check";
  CheckEntry entry;
  entry.family = family.name();
  entry.order = order;
  entry.name = "numerical cross-check";
  entry.anchor = family.title() + " closed-form solution of order " + std::to_string(order);
  std::string ks;
  for (const auto& k : constants) ks += (ks.empty() ? "" : ",") + k.get_str();
  char buffer[160];
  std::snprintf(buffer, sizeof buffer, "constants (%s) on [%.6g, %.6g], relTol %.1e", ks.c_str(), lo, hi, relTol);
  entry.detail = buffer;

  const ChainEquation eq = generateChain(family, order, std::max(order, kDefaultMaxOrder));
  const std::vector<double> grid = uniformGrid(lo, hi, 64, 201);
  try {
    result.trajectory = integrateSystem(chainSystem(eq), grid, derivativeTower(sol, x0, order), relTol,
                                         absTol.value_or(relTol));
  } catch (const StepUnderflow& e) {
    entry.status = CheckStatus::Fail;
    entry.residual = "inf";
    entry.detail += std::string("; ") + e.what();
    result.maxDeviation = std::numeric_limits<double>::infinity();
    result.report.entries.push_back(std::move(entry));
    return result;
  }
  for (std::size_t i = 0; i < result.trajectory.xs.size(); ++i) {
    const double exact = evaluateSolution(sol, Rational(result.trajectory.xs[i])).approximate;
    const double dev = std::abs(result.trajectory.states[i][0] - exact) / std::max(1.0, std::abs(exact));
    result.maxDeviation = std::max(result.maxDeviation, std::isfinite(dev) ? dev : std::numeric_limits<double>::infinity());
  }
  result.comparisonPoints = static_cast<int>(result.trajectory.xs.size());
  entry.status = result.maxDeviation < 100.0 * relTol ? CheckStatus::Pass : CheckStatus::Fail;
  std::snprintf(buffer, sizeof buffer, "%.3e", result.maxDeviation);
  entry.residual = buffer;
  std::snprintf(buffer, sizeof buffer, "; %d points, %ld steps, %ld rejected", result.comparisonPoints,
                result.trajectory.stats.steps, result.trajectory.stats.rejected);
  entry.detail += buffer;
  result.report.entries.push_back(std::move(entry));
  return result;
}

VerificationReport crossCheck(ChainFamily family, int order, const std::vector<Rational>& constants, double lo,
                              double hi, double relTol) {
  return crossCheckDetailed(family, order, constants, lo, hi, relTol).report;
}

}  // namespace chainlab
