#pragma once

// Shipped verification batteries.  Every case is seeded from constants in
// the library, so a suite's artifacts are a pure function of the build.

#include <string>
#include <string_view>
#include <vector>

#include "ergolab/experiment.hpp"

namespace ergolab {

enum class CaseStatus { Passed, Failed, Skipped };

struct SuiteCase {
  std::string name;
  CaseStatus status = CaseStatus::Passed;
  std::string detail;
  std::vector<Artifact> artifacts;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteCase> cases;

  int count(CaseStatus s) const;
  bool passed() const { return count(CaseStatus::Failed) == 0; }
  /// {"schema_version", "suite", "passed", "failed", "skipped", "cases": [...]}
  std::string summary_json() const;
  /// Every case artifact, prefixed with the case name, plus "<suite>_summary.json".
  std::vector<Artifact> artifacts() const;
};

/// "inequalities", "oracles" or "convergence"; ConfigError otherwise.
SuiteReport run_suite(std::string_view name);

std::vector<std::string> suite_names();

}  // namespace ergolab
