#pragma once

#include <string>
#include <vector>

namespace chainlab {

enum class CheckStatus { Pass, Fail, Inconclusive };

std::string toString(CheckStatus s);

struct CheckEntry {
  std::string family;  // "riccati", "abel" or empty
  int order = 0;
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  /// Exact residual (or deviation for numerical checks) as text.
  std::string residual;
  /// Which printed result this check is tied to; never empty.
  std::string anchor;
  std::string detail;
};

struct VerificationReport {
  std::string subject;
  std::vector<CheckEntry> entries;
  std::vector<std::string> errata;

  /// Pass iff every entry passes; Fail dominates Inconclusive.
  CheckStatus status() const;
  void append(const VerificationReport& other);
  /// Deterministic order by (family, order, name).
  void sortEntries();
};

}  // namespace chainlab
