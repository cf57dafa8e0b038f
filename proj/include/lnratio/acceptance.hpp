#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace lnratio {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  /// Measured values behind the verdict, one short clause per sub-check.
  std::string detail;
  double seconds = 0.0;
};

inline constexpr int kCriterionCount = 11;

std::string criterion_title(int id);

/// Runs criterion `id` (1..11). When `artifacts` is set, JSON/CSV evidence is written there.
/// Exceptions inside a criterion are reported as a failure with the message in `detail`.
CriterionResult run_criterion(int id, const std::optional<std::filesystem::path>& artifacts = {});

/// "criterion <id> [<title>]: PASS|FAIL (<seconds>s) <detail>"
std::string format_line(const CriterionResult& r);

}  // namespace lnratio
