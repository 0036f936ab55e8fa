#pragma once

// Config-driven experiment runner.  A run produces its artifacts in memory;
// callers decide where (and whether) they land on disk.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ergolab/config.hpp"

namespace ergolab {

struct Artifact {
  std::string name;  // file name, e.g. "run.csv"
  std::string content;
};

struct RunOptions {
  std::string name = "result";           // artifact stem
  std::optional<std::uint64_t> seed;     // overrides "seed"
  std::optional<std::uint64_t> budget;   // overrides "budget" and ERGOLAB_BUDGET
};

struct RunResult {
  bool passed = true;  // false iff some "holds" verdict is false
  std::vector<Artifact> artifacts;
};

/// Every kind of the schema: average, sup, vdc, assani, cubic_estimate,
/// gowers, local_seminorm, hk, selfjoining, seq_corr, lemma33.
RunResult run_experiment(const config::Json& cfg, const RunOptions& opts = {});

/// Parses the file and runs it; the stem of the path names the artifacts
/// unless the config has a "name".
RunResult run_experiment_file(const std::filesystem::path& path, const RunOptions& opts = {});

inline constexpr int kExitPass = 0;
inline constexpr int kExitVerdict = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBudget = 3;

/// kExitBudget for BudgetError, kExitConfig for anything else.
int exit_code_for(const std::exception& e);

/// Writes through a temporary file in the same directory and renames it.
void write_atomic(const std::filesystem::path& path, std::string_view content);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double v);

/// The "schema_version" carried by every JSON report.
inline constexpr const char* kSchemaVersion = "1";

}  // namespace ergolab
