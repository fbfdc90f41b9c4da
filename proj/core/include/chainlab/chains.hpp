#pragma once

#include <string>
#include <string_view>

#include "chainlab/diffpoly.hpp"
#include "chainlab/report.hpp"

namespace chainlab {

enum class FamilyTag { Riccati, Abel };

/// Riccati (m = 1) or Abel (m = 2) chain.
struct ChainFamily {
  FamilyTag tag = FamilyTag::Riccati;

  static constexpr ChainFamily riccati() { return {FamilyTag::Riccati}; }
  static constexpr ChainFamily abel() { return {FamilyTag::Abel}; }
  /// Case-insensitive "riccati" or "abel"; throws DomainError otherwise.
  static ChainFamily parse(std::string_view name);

  int exponent() const { return tag == FamilyTag::Riccati ? 1 : 2; }
  std::string name() const { return tag == FamilyTag::Riccati ? "riccati" : "abel"; }
  std::string title() const { return tag == FamilyTag::Riccati ? "Riccati" : "Abel"; }

  friend bool operator==(ChainFamily, ChainFamily) = default;
};

struct ChainEquation {
  ChainFamily family;
  int order = 1;
  DiffPoly lhs;
};

inline constexpr int kDefaultMaxOrder = 12;

/// E_1 = u' + u^(m+1), E_N = (D_x + u^m) E_(N-1).
/// Throws DomainError for N < 1 and ResourceError for N > maxOrder.
ChainEquation generateChain(ChainFamily family, int order, int maxOrder = kDefaultMaxOrder);

/// Every monomial has scaled weight N*m + 1 under wt(u^(k)) = m*k + 1.
bool isIsobaric(const ChainEquation& eq);

/// Literal transcription of the printed members, orders 1..4.
DiffPoly printedChainMember(ChainFamily family, int order);

/// Compares generated members with the printed ones. The known misprint in
/// the fourth Abel member is reported as an erratum, not as a failure.
VerificationReport catalogCheck();

}  // namespace chainlab
