#include "chainlab/chains.hpp"

#include <algorithm>
#include <cctype>

#include "chainlab/errors.hpp"

namespace chainlab {

ChainFamily ChainFamily::parse(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "riccati") return riccati();
  if (lower == "abel") return abel();
  throw DomainError("unknown chain family '" + std::string(name) + "' (expected riccati or abel)");
}

ChainEquation generateChain(ChainFamily family, int order, int maxOrder) {
  if (order < 1) throw DomainError("chain order must be at least 1");
  if (order > maxOrder) {
    throw ResourceError("chain order " + std::to_string(order) + " exceeds the configured maximum " +
                        std::to_string(maxOrder));
  }
  const int m = family.exponent();
  const DiffPoly um = DiffPoly::u(0, m);
  DiffPoly e = DiffPoly::u(1) + DiffPoly::u(0, m + 1);
  for (int n = 2; n <= order; ++n) e = e.totalDerivative() + um * e;
  return {family, order, std::move(e)};
}

bool isIsobaric(const ChainEquation& eq) {
  const int m = eq.family.exponent();
  const int target = eq.order * m + 1;
  return std::all_of(eq.lhs.terms().begin(), eq.lhs.terms().end(),
                     [&](const auto& t) { return scaledWeight(t.first, m) == target; });
}

DiffPoly printedChainMember(ChainFamily family, int order) {
  using T = DiffPoly::TermSpec;
  if (family.tag == FamilyTag::Riccati) {
    switch (order) {
      case 1: return DiffPoly::fromTerms({T{1, {{1, 1}}}, T{1, {{0, 2}}}});
      case 2: return DiffPoly::fromTerms({T{1, {{2, 1}}}, T{3, {{0, 1}, {1, 1}}}, T{1, {{0, 3}}}});
      case 3:
        return DiffPoly::fromTerms({T{1, {{3, 1}}}, T{4, {{0, 1}, {2, 1}}}, T{6, {{0, 2}, {1, 1}}},
                                    T{3, {{1, 2}}}, T{1, {{0, 4}}}});
      case 4:
        return DiffPoly::fromTerms({T{1, {{4, 1}}}, T{5, {{0, 1}, {3, 1}}}, T{10, {{1, 1}, {2, 1}}},
                                    T{10, {{0, 2}, {2, 1}}}, T{15, {{0, 1}, {1, 2}}}, T{10, {{0, 3}, {1, 1}}},
                                    T{1, {{0, 5}}}});
      default: break;
    }
  } else {
    switch (order) {
      case 1: return DiffPoly::fromTerms({T{1, {{1, 1}}}, T{1, {{0, 3}}}});
      case 2: return DiffPoly::fromTerms({T{1, {{2, 1}}}, T{4, {{0, 2}, {1, 1}}}, T{1, {{0, 5}}}});
      case 3:
        return DiffPoly::fromTerms({T{1, {{3, 1}}}, T{5, {{0, 2}, {2, 1}}}, T{8, {{0, 1}, {1, 2}}},
                                    T{9, {{0, 4}, {1, 1}}}, T{1, {{0, 7}}}});
      case 4:
        // As printed, including 14*u^4*u_x in place of 14*u^4*u_xx.
        return DiffPoly::fromTerms({T{1, {{4, 1}}}, T{6, {{0, 2}, {3, 1}}}, T{26, {{0, 1}, {1, 1}, {2, 1}}},
                                    T{14, {{0, 4}, {1, 1}}}, T{8, {{1, 3}}}, T{44, {{0, 3}, {1, 2}}},
                                    T{16, {{0, 6}, {1, 1}}}, T{1, {{0, 9}}}});
      default: break;
    }
  }
  throw DomainError("no printed " + family.title() + " member of order " + std::to_string(order));
}

namespace {

DiffPoly knownAbelErratum() {
  using T = DiffPoly::TermSpec;
  return DiffPoly::fromTerms({T{14, {{0, 4}, {2, 1}}}, T{-14, {{0, 4}, {1, 1}}}});
}

std::string describeDifference(const DiffPoly& generated, const DiffPoly& printed) {
  std::string out;
  for (const auto& [m, c] : generated.terms()) {
    if (printed.coefficient(m) != c) {
      out += (out.empty() ? "" : "; ") + std::string("generated ") + toText(DiffPoly(Poly::term(c, m)));
    }
  }
  for (const auto& [m, c] : printed.terms()) {
    if (generated.coefficient(m) != c) {
      out += (out.empty() ? "" : "; ") + std::string("printed ") + toText(DiffPoly(Poly::term(c, m)));
    }
  }
  return out;
}

}  // namespace

VerificationReport catalogCheck() {
  VerificationReport report;
  report.subject = "chain catalog, orders 1-4";
  for (const ChainFamily family : {ChainFamily::riccati(), ChainFamily::abel()}) {
    for (int n = 1; n <= 4; ++n) {
      const DiffPoly generated = generateChain(family, n).lhs;
      const DiffPoly printed = printedChainMember(family, n);
      const DiffPoly diff = generated - printed;
      CheckEntry entry;
      entry.family = family.name();
      entry.order = n;
      entry.name = "catalog";
      entry.residual = toText(diff);
      entry.anchor = "printed " + family.title() + " chain member of order " + std::to_string(n);
      if (diff.isZero()) {
        entry.status = CheckStatus::Pass;
        entry.detail = "exact match: " + toText(generated);
      } else if (family.tag == FamilyTag::Abel && n == 4 && diff == knownAbelErratum()) {
        entry.status = CheckStatus::Pass;
        entry.detail = "known erratum: " + describeDifference(generated, printed);
        report.errata.push_back(
            "Abel order 4: printed term 14*u^4*u_x should read 14*u^4*u_xx (the printed term breaks the "
            "isobaric weight)");
      } else {
        entry.status = CheckStatus::Fail;
        entry.detail = describeDifference(generated, printed);
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

}  // namespace chainlab
