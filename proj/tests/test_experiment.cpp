#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/experiment.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/suites.hpp"

using namespace ergolab;
using config::Json;

namespace {

const Json kAverage = Json::parse(R"({
  "kind": "average",
  "system": {"variant": "torus", "alpha": 0.6180339887498949},
  "state": {"coords": [0.25]},
  "observables": [{"variant": "one"}, {"variant": "one"}],
  "exponents": [1, 2],
  "schedule": {"max_n": 256}
})");

const Artifact& find(const RunResult& r, const std::string& suffix) {
  for (const auto& a : r.artifacts) {
    if (a.name.size() >= suffix.size() && a.name.compare(a.name.size() - suffix.size(), suffix.size(), suffix) == 0) return a;
  }
  FAIL("missing artifact " << suffix);
  throw;
}

std::string error_of(const Json& cfg) {
  try {
    run_experiment(cfg);
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("all-ones average writes A_N = 1 on every row") {
  const auto r = run_experiment(kAverage, {"ones", std::nullopt, std::nullopt});
  CHECK(r.passed);
  const auto& csv = find(r, ".csv").content;
  CHECK(csv.rfind("N,re,im,cauchy_tail\n", 0) == 0);
  std::size_t rows = 0;
  for (std::size_t pos = csv.find('\n') + 1; pos < csv.size(); pos = csv.find('\n', pos) + 1) {
    const auto line = csv.substr(pos, csv.find('\n', pos) - pos);
    CHECK(line.substr(line.find(',')) == ",1,0,0");
    ++rows;
  }
  CHECK(rows > 5);
  CHECK(find(r, ".json").content.find("\"schema_version\"") != std::string::npos);
}

TEST_CASE("config errors carry the field path") {
  Json missing = kAverage;
  missing.erase("exponents");
  CHECK(error_of(missing).find("$.exponents") != std::string::npos);

  Json bad_variant = kAverage;
  bad_variant["system"]["variant"] = "klein";
  CHECK(error_of(bad_variant).find("$.system.variant") != std::string::npos);

  Json bad_entry = kAverage;
  bad_entry["observables"][1] = Json::object({{"variant", "character"}, {"character_m", "x"}});
  CHECK(error_of(bad_entry).find("$.observables[1].character_m") != std::string::npos);

  Json kindless = kAverage;
  kindless.erase("kind");
  CHECK(error_of(kindless).find("$.kind") != std::string::npos);

  CHECK(error_of(Json::array()).find("$") == 0);
}

TEST_CASE("exit codes") {
  CHECK(exit_code_for(ConfigError("x")) == kExitConfig);
  CHECK(exit_code_for(WindowError("x")) == kExitConfig);
  CHECK(exit_code_for(BudgetError("x")) == kExitBudget);

  const Json heavy = Json::parse(R"({"kind": "gowers", "table": [1,1,1,1,1,1,1,1,1,1], "k": 3, "budget": 100})");
  try {
    run_experiment(heavy);
    FAIL("expected a budget error");
  } catch (const std::exception& e) {
    CHECK(exit_code_for(e) == kExitBudget);
  }

  const Json failing = Json::parse(R"({"kind": "vdc", "sequence": {"values": [1, 1, -1], "offset": 1}, "N": 2, "H": 2})");
  CHECK_FALSE(run_experiment(failing).passed);
  Json classical = failing;
  classical["form"] = "classical";
  CHECK(run_experiment(classical).passed);
}

TEST_CASE("format_double round-trips and normalizes negative zero") {
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("write_atomic replaces the target") {
  const auto path = std::filesystem::temp_directory_path() / "ergolab_atomic_test.txt";
  write_atomic(path, "first");
  write_atomic(path, "second");
  std::ifstream in(path);
  std::string s;
  std::getline(in, s);
  CHECK(s == "second");
  CHECK_FALSE(std::filesystem::exists(path.string() + ".tmp"));
  std::filesystem::remove(path);
}

TEST_CASE("suite artifacts do not depend on the worker count") {
  std::vector<std::vector<Artifact>> runs;
  for (int workers : {1, 2, 8}) {
    set_worker_count(workers);
    runs.push_back(run_suite("oracles").artifacts());
    const auto r = run_experiment(kAverage);
    runs.back().insert(runs.back().end(), r.artifacts.begin(), r.artifacts.end());
  }
  set_worker_count(1);
  for (std::size_t i = 1; i < runs.size(); ++i) {
    REQUIRE(runs[i].size() == runs[0].size());
    for (std::size_t j = 0; j < runs[0].size(); ++j) {
      CHECK(runs[i][j].name == runs[0][j].name);
      CHECK(runs[i][j].content == runs[0][j].content);
    }
  }
  CHECK_THROWS_AS(run_suite("nonsense"), ConfigError);
}
