#include "chainlab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "chainlab/chains.hpp"
#include "chainlab/errors.hpp"
#include "chainlab/normal_form.hpp"
#include "chainlab/numcheck.hpp"
#include "chainlab/parser.hpp"
#include "chainlab/reduction.hpp"
#include "chainlab/solutions.hpp"
#include "chainlab/symmetry.hpp"
#include "render.hpp"

namespace chainlab::cli {

namespace {

struct Options {
  std::string family;
  int order = 2;
  std::string constants;
  std::string format = "text";
  std::string out;
  std::string interval = "0,1";
  double rtol = 1e-9;
  std::optional<double> atol;
  std::string c;
  std::string eval;
  std::string suite = "all";
  int maxOrder = 4;
  int minOrder = 2;
  bool recursive = false;
};

std::vector<std::string> splitList(const std::string& s) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, ',')) parts.push_back(item);
  if (!s.empty() && s.back() == ',') parts.emplace_back();
  return parts;
}

std::vector<Rational> parseConstants(const std::string& s) {
  std::vector<Rational> out;
  if (s.empty()) return out;
  for (const auto& part : splitList(s)) out.push_back(parseRational(part));
  return out;
}

double parseDouble(const std::string& s, const std::string& what) {
  const char* begin = s.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size() || errno != 0 || !std::isfinite(v)) {
    throw DomainError("invalid number '" + s + "' for " + what);
  }
  return v;
}

std::pair<double, double> parseInterval(const std::string& s) {
  const auto parts = splitList(s);
  if (parts.size() != 2) throw DomainError("interval must be 'a,b'");
  const double a = parseDouble(parts[0], "--interval");
  const double b = parseDouble(parts[1], "--interval");
  if (!(b > a)) throw DomainError("interval must satisfy a < b");
  return {a, b};
}

std::vector<ChainFamily> familiesFor(const std::string& name) {
  if (name.empty() || name == "both") return {ChainFamily::riccati(), ChainFamily::abel()};
  return {ChainFamily::parse(name)};
}

int checkedOrder(int order, int cap) {
  if (order < 1) throw DomainError("order must be at least 1");
  if (order > cap) {
    throw ResourceError("order " + std::to_string(order) + " exceeds the cap " + std::to_string(cap) +
                        " (set CHAINLAB_MAX_ORDER to raise it)");
  }
  return order;
}

int exitFor(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return kPass;
    case CheckStatus::Fail: return kFail;
    case CheckStatus::Inconclusive: return kInternal;
  }
  return kInternal;
}

CheckEntry entry(ChainFamily family, int order, std::string name, bool ok, std::string residual, std::string anchor,
                 std::string detail = {}) {
  CheckEntry e;
  e.family = family.name();
  e.order = order;
  e.name = std::move(name);
  e.status = ok ? CheckStatus::Pass : CheckStatus::Fail;
  e.residual = std::move(residual);
  e.anchor = std::move(anchor);
  e.detail = std::move(detail);
  return e;
}

std::string memberAnchor(ChainFamily family, int order) {
  return family.title() + " chain member of order " + std::to_string(order);
}

// ------------------------------------------------------------------ checks

VerificationReport chainChecks(ChainFamily family, int order, int cap) {
  VerificationReport r;
  r.subject = family.title() + " chain member of order " + std::to_string(order);
  const ChainEquation eq = generateChain(family, order, cap);
  r.entries.push_back(entry(family, order, "isobaric weight", isIsobaric(eq), "", memberAnchor(family, order),
                            "every monomial has scaled weight " + std::to_string(order * family.exponent() + 1)));
  const bool monic = eq.lhs.coefficient(Monomial(Var::u(order))) == 1 &&
                     eq.lhs.coefficient(Monomial(Var::u(0), order * family.exponent() + 1)) == 1;
  r.entries.push_back(entry(family, order, "leading structure", monic, "", memberAnchor(family, order),
                            "coefficients of the top derivative and of the pure power are 1"));
  if (order > 1) {
    const DiffPoly lower = generateChain(family, order - 1, cap).lhs;
    const DiffPoly diff = eq.lhs - lower.totalDerivative() - DiffPoly::u(0, family.exponent()) * lower;
    r.entries.push_back(entry(family, order, "recursion consistency", diff.isZero(), toText(diff), memberAnchor(family, order)));
  }
  return r;
}

VerificationReport reductionChecks(ChainFamily family, int order, int cap) {
  VerificationReport r;
  r.subject = family.title() + " order " + std::to_string(order) + " reduction";
  const std::string anchor = family.title() + " order " + std::to_string(order) + " similarity reduction to Riccati order " +
                             std::to_string(order - 1);
  try {
    const ReductionResult res = reduceChain(generateChain(family, order, cap));
    bool common = true;
    for (const auto& [m, c] : res.substituted.terms()) common = common && m.degree(Var::u(0)) >= 1;
    r.entries.push_back(entry(family, order, "factorization", res.residual.isZero() && common, toText(res.residual), anchor,
                              "target " + toText(res.reduced)));
  } catch (const FactorizationFailure& e) {
    r.entries.push_back(entry(family, order, "factorization", false, "nonzero", anchor, e.what()));
  }
  return r;
}

VerificationReport solutionChecks(ChainFamily family, int order, int cap) {
  VerificationReport r;
  r.subject = family.title() + " order " + std::to_string(order) + " general solution";
  const ChainEquation eq = generateChain(family, order, cap);
  const auto ks = symbolicConstants(order);
  const std::string anchor = family.title() + " general solution of order " + std::to_string(order);
  const SolutionFamily direct = directSolution(family, order, ks);
  const ResidualCertificate cert = verifySolutionSymbolic(eq, direct);
  r.entries.push_back(entry(family, order, "symbolic residual", cert.isZero(), cert.residualNumerator.toString(), anchor,
                            solutionText(direct)));
  const SolutionFamily rec = recursiveSolve(family, order, ks);
  const bool agree = sameSolution(directSolution(family, order, recursiveToDirectConstants(rec)), rec);
  const ResidualCertificate recCert = verifySolutionSymbolic(eq, rec);
  r.entries.push_back(entry(family, order, "recursive solve", agree && recCert.isZero(),
                            recCert.residualNumerator.toString(), anchor,
                            agree ? "agrees with the direct construction after matching constants"
                                  : "does not match the direct construction"));
  return r;
}

VerificationReport linearizationCheck(int order, int cap) {
  const ChainFamily family = ChainFamily::riccati();
  VerificationReport r;
  r.subject = "Riccati order " + std::to_string(order) + " linearization";
  const ResidualCertificate cert =
      verifySolutionSymbolic(generateChain(family, order, cap), linearizedRiccati(order, genericPolynomial(order)));
  r.entries.push_back(entry(family, order, "linearization u = psi'/psi", cert.isZero(), cert.residualNumerator.toString(),
                            "Riccati general solution of order " + std::to_string(order),
                            "psi has degree " + std::to_string(order) + " with symbolic coefficients"));
  return r;
}

VerificationReport numericChecks(ChainFamily family, int order, int sets) {
  VerificationReport r;
  r.subject = family.title() + " order " + std::to_string(order) + " numerical cross-checks";
  std::mt19937_64 rng(static_cast<unsigned long>(1000 * order + (family.tag == FamilyTag::Abel ? 1 : 0)));
  std::uniform_int_distribution<int> num(-8, 8);
  std::uniform_int_distribution<int> den(1, 3);
  int done = 0;
  for (int attempt = 0; done < sets && attempt < 200; ++attempt) {
    std::vector<Rational> ks;
    for (int i = 0; i < order; ++i) ks.push_back(ratio(num(rng), den(rng)));
    const auto interval = findPoleFreeInterval(directSolution(family, order, rationalConstants(ks)), 1.0, -4.0, 4.0, 0.25);
    if (!interval) continue;
    r.append(crossCheck(family, order, ks, interval->first, interval->second, 1e-9));
    ++done;
  }
  if (done < sets) {
    CheckEntry e = entry(family, order, "numerical cross-check", false, "", family.title() + " closed-form solution",
                         "no pole-free interval found");
    e.status = CheckStatus::Inconclusive;
    r.entries.push_back(std::move(e));
  }
  return r;
}

VerificationReport filterFamily(VerificationReport r, const std::vector<ChainFamily>& families) {
  std::erase_if(r.entries, [&](const CheckEntry& e) {
    return std::none_of(families.begin(), families.end(), [&](ChainFamily f) { return f.name() == e.family; });
  });
  return r;
}

// ----------------------------------------------------------------- verbs

Document cmdChain(const Options& o, int cap) {
  const ChainFamily family = ChainFamily::parse(o.family);
  const int order = checkedOrder(o.order, cap);
  const ChainEquation eq = generateChain(family, order, cap);
  Document doc;
  doc.command = "chain";
  doc.report = chainChecks(family, order, cap);
  doc.text.push_back(family.title() + " chain, order " + std::to_string(order) + ":");
  doc.text.push_back("  " + toText(eq.lhs) + " = 0");
  doc.latex.push_back(toLatex(eq.lhs) + " = 0");
  doc.data = {{"family", family.name()},
              {"order", order},
              {"lhs", toText(eq.lhs)},
              {"latex", toLatex(eq.lhs)},
              {"terms", eq.lhs.termCount()}};
  return doc;
}

Document cmdReduce(const Options& o, int cap) {
  const ChainFamily family = ChainFamily::parse(o.family);
  const int order = checkedOrder(o.order, cap);
  if (order < 2) throw DomainError("reduce needs --order of at least 2");
  Document doc;
  doc.command = "reduce";
  doc.report = reductionChecks(family, order, cap);
  const SubstitutionTable table = buildSubstitutionTable(family, order);
  const ChainEquation eq = generateChain(family, order, cap);
  doc.text.push_back("invariant: zeta = u_x/u + u^" + std::to_string(family.exponent()));
  nlohmann::json table_json = nlohmann::json::array();
  for (int k = 1; k <= order; ++k) {
    doc.text.push_back("  " + Var::u(k).name() + " -> " + toText(table.entry(k)));
    table_json.push_back(toText(table.entry(k)));
  }
  const std::vector<ChainEquation> ladder = reductionLadder(family, order, cap);
  const ReductionResult res = reduceChain(eq);
  doc.text.push_back("substituted: " + toText(res.substituted));
  doc.text.push_back("reduced: u * (" + toText(res.reduced) + ")");
  doc.latex.push_back(toLatex(eq.lhs) + " = u \\left(" + toLatex(res.reduced) + "\\right)");
  nlohmann::json ladder_json = nlohmann::json::array();
  std::string ladderText = "ladder:";
  for (const auto& step : ladder) {
    ladderText += " Riccati " + std::to_string(step.order);
    ladder_json.push_back(toText(step.lhs.renamed(Dependent::U, Dependent::Zeta)));
  }
  doc.text.push_back(ladderText);
  const bool ladderOk = static_cast<int>(ladder.size()) == order - 1 && ladder.back().order == 1;
  doc.report.entries.push_back(entry(family, order, "reduction ladder", ladderOk, "",
                                     family.title() + " order " + std::to_string(order) + " reduction ladder",
                                     std::to_string(ladder.size()) + " steps ending at zeta_x + zeta^2"));
  doc.data = {{"family", family.name()},
              {"order", order},
              {"substitution", table_json},
              {"substituted", toText(res.substituted)},
              {"target", toText(res.reduced)},
              {"ladder", ladder_json}};
  return doc;
}

Document cmdSymmetry(const Options& o, int cap) {
  const ChainFamily family = ChainFamily::parse(o.family);
  const int order = checkedOrder(o.order, cap);
  Document doc;
  doc.command = "symmetry";
  VectorField field = buildGenerator(family);
  Expr flux = buildCoveringFlux(family);
  std::optional<Expr> c;
  Assumptions assumptions;
  if (!o.c.empty()) {
    c = parseExpression(o.c);
    assumptions = radicandAssumptions(*c);
    field = specialize(field, *c);
    flux = specializeC(flux, *c);
    doc.text.push_back("c(x) = " + toText(*c));
  }
  const ProlongedField first = prolong(field, flux, 1, assumptions);
  doc.text.push_back("covering: v_x = " + toText(flux));
  doc.text.push_back("generator: xi = " + toText(field.xi) + ", phi = " + toText(field.phi) + ", psi = " + toText(field.psi));
  doc.text.push_back("phi_v = " + toText(diff(field.phi, Var::v())));
  doc.text.push_back("phi^(1) = " + toText(first.coefficients.front()));
  doc.latex.push_back("v_x = " + toLatex(flux));
  doc.latex.push_back("X = " + toLatex(field.phi) + " \\partial_u + " + toLatex(field.psi) + " \\partial_v");
  doc.latex.push_back("\\phi^{(1)} = " + toLatex(first.coefficients.front()));

  doc.report.subject = family.title() + " nonlocal symmetry";
  CheckEntry nonlocal = entry(family, order, "nonlocality", !isZero(nonlocality(field), assumptions), "",
                              family.title() + " nonlocality criterion", "xi_v^2 + phi_v^2 = " + toText(nonlocality(field)));
  doc.report.entries.push_back(std::move(nonlocal));
  if (!c) {
    doc.report.append(verifyDeterminingEquations(family));
    doc.report.append(checkInvariantFunctions(family));
  }
  doc.report.append(verifyInvariance(family, order, c));
  doc.report.sortEntries();
  doc.data = {{"family", family.name()},
              {"order", order},
              {"flux", toText(flux)},
              {"xi", toText(field.xi)},
              {"phi", toText(field.phi)},
              {"psi", toText(field.psi)},
              {"phi1", toText(first.coefficients.front())}};
  if (c) doc.data["c"] = toText(*c);
  return doc;
}

Document cmdSolve(const Options& o, int cap) {
  const ChainFamily family = ChainFamily::parse(o.family);
  const int order = checkedOrder(o.order, cap);
  const std::vector<Rational> values = parseConstants(o.constants);
  const std::vector<Poly> ks = values.empty() ? symbolicConstants(order) : rationalConstants(values);
  if (static_cast<int>(ks.size()) != order) {
    throw DomainError("--constants needs exactly " + std::to_string(order) + " values");
  }
  const SolutionFamily sol = o.recursive ? recursiveSolve(family, order, ks) : directSolution(family, order, ks);
  Document doc;
  doc.command = "solve";
  doc.report.subject = family.title() + " order " + std::to_string(order) + " solution";
  const ResidualCertificate cert = verifySolutionSymbolic(generateChain(family, order, cap), sol);
  const std::string anchor = family.title() + " general solution of order " + std::to_string(order);
  doc.report.entries.push_back(entry(family, order, "symbolic residual", cert.isZero(), cert.residualNumerator.toString(), anchor));
  doc.text.push_back(solutionText(sol));
  doc.latex.push_back(solutionLatex(sol));
  doc.data = {{"family", family.name()},
              {"order", order},
              {"numerator", sol.numerator.toString()},
              {"denominator", sol.denominator.toString()},
              {"form", sol.isRiccatiForm() ? "numerator/denominator" : "numerator/sqrt(denominator)"}};
  if (!o.eval.empty()) {
    const Rational x = parseRational(o.eval);
    const std::string at = "u(" + x.get_str() + ")";
    CheckEntry e = entry(family, order, "evaluation at x = " + x.get_str(), true, "", anchor);
    try {
      const SolutionValue v = evaluateSolution(sol, x);
      if (v.exact) {
        doc.text.push_back(at + " = " + v.exact->get_str());
        doc.latex.push_back(at + " = " + toLatex(Expr(*v.exact)));
        doc.data["value"] = v.exact->get_str();
      } else if (v.real) {
        std::ostringstream os;
        os.precision(15);
        os << v.approximate;
        doc.text.push_back(at + " = " + os.str() + " (P = " + v.numerator.get_str() + ", S = " + v.denominator.get_str() + ")");
        doc.latex.push_back(at + " = \\frac{" + toLatex(Expr(v.numerator)) + "}{\\sqrt{" + toLatex(Expr(v.denominator)) + "}}");
        doc.data["value"] = v.approximate;
        doc.data["P"] = v.numerator.get_str();
        doc.data["S"] = v.denominator.get_str();
      } else {
        e.status = CheckStatus::Fail;
        e.detail = "not real: S = " + v.denominator.get_str() + " < 0";
        doc.text.push_back(at + " is not real (S = " + v.denominator.get_str() + ")");
      }
    } catch (const PoleAt& p) {
      e.status = CheckStatus::Fail;
      e.detail = p.what();
      doc.text.push_back(at + " is a pole");
    }
    doc.report.entries.push_back(std::move(e));
  }
  return doc;
}

Document cmdNumcheck(const Options& o, int cap) {
  const ChainFamily family = ChainFamily::parse(o.family);
  const int order = checkedOrder(o.order, cap);
  const std::vector<Rational> ks = parseConstants(o.constants);
  if (static_cast<int>(ks.size()) != order) throw DomainError("--constants needs exactly " + std::to_string(order) + " values");
  const auto [lo, hi] = parseInterval(o.interval);
  Document doc;
  doc.command = "numcheck";
  try {
    const CrossCheckResult res = crossCheckDetailed(family, order, ks, lo, hi, o.rtol, o.atol);
    doc.report = res.report;
    const SolutionFamily sol = directSolution(family, order, rationalConstants(ks));
    nlohmann::json samples = nlohmann::json::array();
    for (std::size_t i = 0; i < res.trajectory.xs.size(); ++i) {
      const double x = res.trajectory.xs[i];
      samples.push_back({x, res.trajectory.states[i][0], evaluateSolution(sol, Rational(x)).approximate});
    }
    doc.data = {{"family", family.name()},
                {"order", order},
                {"interval", {lo, hi}},
                {"maxDeviation", res.maxDeviation},
                {"steps", res.trajectory.stats.steps},
                {"rejected", res.trajectory.stats.rejected},
                {"samples", samples}};
    doc.text.push_back("max deviation " + doc.report.entries.front().residual + " over " +
                       std::to_string(res.comparisonPoints) + " points");
  } catch (const PoleInInterval& p) {
    doc.report.subject = family.title() + " order " + std::to_string(order) + " numerical cross-check";
    doc.report.entries.push_back(entry(family, order, "numerical cross-check", false, "", family.title() +
                                       " closed-form solution of order " + std::to_string(order), p.what()));
    doc.data = {{"pole", p.root()}};
  }
  return doc;
}

Document cmdVerify(const Options& o, int cap, const std::string& command) {
  const auto families = familiesFor(o.family);
  const int maxOrder = checkedOrder(o.maxOrder, cap);
  const int minOrder = std::max(1, o.minOrder);
  if (minOrder > maxOrder) throw DomainError("--min-order exceeds --max-order");
  static const std::vector<std::string> kSuites{"catalog",  "determining", "symmetry",      "invariants", "reduction",
                                                "solutions", "printed",    "linearization", "numeric",    "all"};
  if (std::find(kSuites.begin(), kSuites.end(), o.suite) == kSuites.end()) {
    throw DomainError("unknown suite '" + o.suite + "'");
  }
  const auto wants = [&](const std::string& s) { return o.suite == "all" || o.suite == s; };

  std::vector<std::function<VerificationReport()>> tasks;
  if (wants("catalog")) tasks.emplace_back([families] { return filterFamily(catalogCheck(), families); });
  if (wants("printed")) tasks.emplace_back([families] { return filterFamily(verifyPrintedSolutions(), families); });
  for (const ChainFamily family : families) {
    if (wants("determining")) tasks.emplace_back([family] { return verifyDeterminingEquations(family); });
    if (wants("invariants")) tasks.emplace_back([family] { return checkInvariantFunctions(family); });
    for (int n = minOrder; n <= maxOrder; ++n) {
      if (wants("symmetry")) tasks.emplace_back([family, n] { return verifyInvariance(family, n); });
      if (wants("reduction") && n >= 2) tasks.emplace_back([family, n, cap] { return reductionChecks(family, n, cap); });
      if (wants("solutions")) tasks.emplace_back([family, n, cap] { return solutionChecks(family, n, cap); });
      if (wants("linearization") && family.tag == FamilyTag::Riccati) {
        tasks.emplace_back([n, cap] { return linearizationCheck(n, cap); });
      }
      if (wants("numeric")) tasks.emplace_back([family, n] { return numericChecks(family, n, 3); });
    }
  }
  std::vector<std::future<VerificationReport>> futures;
  futures.reserve(tasks.size());
  for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
  Document doc;
  doc.command = command;
  std::string fams;
  for (const auto f : families) fams += (fams.empty() ? "" : "+") + f.name();
  doc.report.subject = "suite " + o.suite + " (" + fams + ", orders " + std::to_string(minOrder) + "-" +
                       std::to_string(maxOrder) + ")";
  for (auto& f : futures) doc.report.append(f.get());
  doc.report.sortEntries();
  doc.data = {{"suite", o.suite}, {"minOrder", minOrder}, {"maxOrder", maxOrder}, {"checks", doc.report.entries.size()}};
  return doc;
}

void addCommon(CLI::App* cmd, Options& o, bool familyRequired) {
  auto* fam = cmd->add_option("--family", o.family, "riccati or abel");
  if (familyRequired) fam->required();
  cmd->add_option("--format", o.format, "text, latex or json")->capture_default_str();
  cmd->add_option("--out", o.out, "write the report to FILE instead of stdout");
}

}  // namespace

int maxOrderFromEnvironment() {
  const char* raw = std::getenv("CHAINLAB_MAX_ORDER");
  if (raw == nullptr || *raw == '\0') return kDefaultMaxOrder;
  const std::string s(raw);
  if (!std::all_of(s.begin(), s.end(), [](unsigned char ch) { return std::isdigit(ch); }) || s.size() > 4) {
    throw DomainError("CHAINLAB_MAX_ORDER must be a positive integer");
  }
  const int v = std::stoi(s);
  if (v < 1) throw DomainError("CHAINLAB_MAX_ORDER must be a positive integer");
  return v;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Riccati and Abel chains: generation, nonlocal symmetries, reductions and solutions", "chainlab"};
  app.require_subcommand(1);
  Options o;

  auto* chain = app.add_subcommand("chain", "print the chain member of a given order");
  addCommon(chain, o, true);
  chain->add_option("--order", o.order, "order N >= 1")->required();

  auto* reduce = app.add_subcommand("reduce", "similarity reduction to the Riccati chain");
  addCommon(reduce, o, true);
  reduce->add_option("--order", o.order, "order N >= 2")->required();

  auto* symmetry = app.add_subcommand("symmetry", "covering system, generator and invariance checks");
  addCommon(symmetry, o, true);
  symmetry->add_option("--order", o.order, "order for the invariance check")->capture_default_str();
  symmetry->add_option("--c", o.c, "expression for c(x), e.g. \"x^2 + 1\"");

  auto* solve = app.add_subcommand("solve", "closed-form solution and its symbolic certificate");
  addCommon(solve, o, true);
  solve->add_option("--order", o.order, "order N >= 1")->required();
  solve->add_option("--constants", o.constants, "k1,...,kN as exact rationals (omit for symbolic constants)");
  solve->add_option("--eval", o.eval, "evaluate u at this rational x");
  solve->add_flag("--recursive", o.recursive, "build the solution by repeated Bernoulli integration");

  auto* numcheck = app.add_subcommand("numcheck", "integrate numerically and compare with the closed form");
  addCommon(numcheck, o, true);
  numcheck->add_option("--order", o.order, "order N >= 1")->required();
  numcheck->add_option("--constants", o.constants, "k1,...,kN as exact rationals")->required();
  numcheck->add_option("--interval", o.interval, "a,b")->capture_default_str();
  numcheck->add_option("--rtol", o.rtol, "relative tolerance")->capture_default_str();
  numcheck->add_option("--atol", o.atol, "absolute tolerance (default: rtol)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  addCommon(verify, o, false);
  verify->add_option("--suite", o.suite,
                     "catalog, determining, symmetry, invariants, reduction, solutions, printed, linearization, "
                     "numeric or all")
      ->capture_default_str();
  verify->add_option("--max-order", o.maxOrder, "highest order checked")->capture_default_str();
  verify->add_option("--min-order", o.minOrder, "lowest order checked")->capture_default_str();

  auto* report = app.add_subcommand("report", "full verification report (all suites, both families)");
  addCommon(report, o, false);
  report->add_option("--max-order", o.maxOrder, "highest order checked")->capture_default_str();
  report->add_option("--min-order", o.minOrder, "lowest order checked")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Format format = parseFormat(o.format);
    const int cap = maxOrderFromEnvironment();
    Document doc;
    if (chain->parsed()) doc = cmdChain(o, cap);
    else if (reduce->parsed()) doc = cmdReduce(o, cap);
    else if (symmetry->parsed()) doc = cmdSymmetry(o, cap);
    else if (solve->parsed()) doc = cmdSolve(o, cap);
    else if (numcheck->parsed()) doc = cmdNumcheck(o, cap);
    else if (verify->parsed()) doc = cmdVerify(o, cap, "verify");
    else {
      o.suite = "all";
      doc = cmdVerify(o, cap, "report");
    }
    const std::string rendered = render(doc, format);
    if (o.out.empty()) {
      out << rendered;
    } else {
      std::ofstream file(o.out);
      if (!file) throw DomainError("cannot open '" + o.out + "' for writing");
      file << rendered;
      err << "wrote " << o.out << "\n";
    }
    return exitFor(doc.report.status());
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << "\n";
    err << "  " << o.c << "\n  " << std::string(e.offset(), ' ') << "^\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const UnsupportedExpression& e) {
    err << "unsupported: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace chainlab::cli
