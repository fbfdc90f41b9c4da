#include "chainlab/reduction.hpp"

#include <map>

#include "chainlab/errors.hpp"

namespace chainlab {

SubstitutionTable buildSubstitutionTable(ChainFamily family, int order) {
  if (order < 1) throw DomainError("substitution table order must be at least 1");
  SubstitutionTable table{family, order, {}};
  const DiffPoly first = DiffPoly::u() * (DiffPoly::zeta() - DiffPoly::u(0, family.exponent()));
  table.entries.push_back(first);
  for (int k = 2; k <= order; ++k) {
    table.entries.push_back(table.entries.back().totalDerivative().substitute(Dependent::U, 1, first));
  }
  return table;
}

ReductionResult reduceChain(const ChainEquation& eq) {
  if (eq.order < 2) throw DomainError("reduction needs a chain member of order at least 2");
  const SubstitutionTable table = buildSubstitutionTable(eq.family, eq.order);
  std::map<Var, Poly> values;
  for (int k = 1; k <= eq.order; ++k) values.emplace(Var::u(k), table.entry(k).poly());

  ReductionResult result;
  result.source = eq;
  result.target = generateChain(ChainFamily::riccati(), eq.order - 1, eq.order);
  result.reduced = result.target.lhs.renamed(Dependent::U, Dependent::Zeta);
  result.substituted = DiffPoly(eq.lhs.poly().substitute(values));
  result.cofactor = Expr(Var::u());
  result.residual = result.substituted - DiffPoly::u() * result.reduced;
  if (!result.residual.isZero()) {
    throw FactorizationFailure(eq.family.title() + " member of order " + std::to_string(eq.order) +
                               " does not factor as u times the Riccati member of order " +
                               std::to_string(eq.order - 1) + "; residual " + toText(result.residual));
  }
  return result;
}

std::vector<ChainEquation> reductionLadder(ChainFamily family, int order, int maxOrder) {
  if (order < 2) throw DomainError("reduction ladder needs order at least 2");
  std::vector<ChainEquation> ladder;
  ChainEquation current = generateChain(family, order, maxOrder);
  while (current.order > 1) {
    current = reduceChain(current).target;
    ladder.push_back(current);
  }
  return ladder;
}

}  // namespace chainlab
