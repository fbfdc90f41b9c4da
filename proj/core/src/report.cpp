#include "chainlab/report.hpp"

#include <algorithm>
#include <tuple>

namespace chainlab {

std::string toString(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Inconclusive: return "inconclusive";
  }
  return "fail";
}

CheckStatus VerificationReport::status() const {
  bool inconclusive = false;
  for (const auto& e : entries) {
    if (e.status == CheckStatus::Fail) return CheckStatus::Fail;
    if (e.status == CheckStatus::Inconclusive) inconclusive = true;
  }
  return inconclusive ? CheckStatus::Inconclusive : CheckStatus::Pass;
}

void VerificationReport::append(const VerificationReport& other) {
  entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  for (const auto& e : other.errata) {
    if (std::find(errata.begin(), errata.end(), e) == errata.end()) errata.push_back(e);
  }
}

void VerificationReport::sortEntries() {
  std::stable_sort(entries.begin(), entries.end(), [](const CheckEntry& a, const CheckEntry& b) {
    return std::tie(a.family, a.order, a.name) < std::tie(b.family, b.order, b.name);
  });
}

}  // namespace chainlab
