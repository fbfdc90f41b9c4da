#pragma once

#include <vector>

#include "chainlab/chains.hpp"
#include "chainlab/expr.hpp"

namespace chainlab {

/// entries[k - 1] expresses u^(k) through u and the zeta tower, k = 1..order.
struct SubstitutionTable {
  ChainFamily family;
  int order = 0;
  std::vector<DiffPoly> entries;

  const DiffPoly& entry(int k) const { return entries.at(static_cast<std::size_t>(k - 1)); }
};

struct ReductionResult {
  ChainEquation source;
  /// Riccati member of order N-1 in the u tower.
  ChainEquation target;
  /// The same member written in the zeta tower.
  DiffPoly reduced;
  /// Source after substitution, before dividing out the cofactor.
  DiffPoly substituted;
  Expr cofactor;
  /// substituted - u * reduced; zero on success.
  DiffPoly residual;
};

/// u' = u (zeta - u^m) and its total derivatives with u' re-substituted.
SubstitutionTable buildSubstitutionTable(ChainFamily family, int order);

/// Throws DomainError for order < 2 and FactorizationFailure if the
/// substituted member is not u times the lower Riccati member.
ReductionResult reduceChain(const ChainEquation& eq);

/// Repeated reductions down to order 1; the result has order - 1 members.
std::vector<ChainEquation> reductionLadder(ChainFamily family, int order, int maxOrder = kDefaultMaxOrder);

}  // namespace chainlab
