// ergolab: run JSON experiments and the shipped verification suites.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ergolab/errors.hpp"
#include "ergolab/experiment.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/suites.hpp"

namespace fs = std::filesystem;

namespace {

void write_all(const fs::path& dir, const std::vector<ergolab::Artifact>& artifacts) {
  fs::create_directories(dir);
  for (const auto& a : artifacts) {
    ergolab::write_atomic(dir / a.name, a.content);
    std::cout << (dir / a.name).string() << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-N ergodic averaging and uniformity experiments"};
  app.require_subcommand(1);

  std::string out = ".";
  unsigned threads = 1;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  app.add_option("--out", out, "Directory for CSV/JSON artifacts");
  app.add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);
  auto* budget_opt = app.add_option("--budget", budget, "Cap on elementary products per kernel")->check(CLI::PositiveNumber);
  auto* seed_opt = app.add_option("--seed", seed, "Override the config seed");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("config", config_path, "Experiment JSON")->required();
  run->fallthrough();

  std::string suite_name;
  auto* suite = app.add_subcommand("suite", "Run a shipped suite");
  suite->add_option("name", suite_name, "inequalities | oracles | convergence")->required();
  suite->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ergolab::kExitConfig;
  }

  ergolab::set_worker_count(threads);
  try {
    if (*run) {
      ergolab::RunOptions opts;
      if (*seed_opt) opts.seed = seed;
      if (*budget_opt) opts.budget = budget;
      const auto result = ergolab::run_experiment_file(config_path, opts);
      write_all(out, result.artifacts);
      if (!result.passed) {
        std::cerr << "verdict: some inequality does not hold\n";
        return ergolab::kExitVerdict;
      }
      return ergolab::kExitPass;
    }
    const auto report = ergolab::run_suite(suite_name);
    write_all(out, report.artifacts());
    std::cout << report.summary_json();
    return report.passed() ? ergolab::kExitPass : ergolab::kExitVerdict;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ergolab::exit_code_for(e);
  }
}
