#include "ergolab/suites.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "ergolab/draws.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/joinings.hpp"
#include "ergolab/nilseq.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/uniformity.hpp"

namespace ergolab {

namespace {

using config::Json;

// Shipped seeds.
constexpr std::uint64_t kVdcSeed = 20240601;
constexpr std::uint64_t kAssaniSeed = 20240602;
constexpr std::uint64_t kCubic3Seed = 20240603;
constexpr std::uint64_t kCubic4Seed = 20240604;
constexpr std::uint64_t kBatterySeed = 20240605;
constexpr std::uint64_t kPermutationSeed = 20240606;

constexpr double kOracleTol = 1e-9;

SuiteCase from_run(const std::string& name, const Json& cfg) {
  RunOptions o;
  o.name = name;
  RunResult r = run_experiment(cfg, o);
  SuiteCase c;
  c.name = name;
  c.status = r.passed ? CaseStatus::Passed : CaseStatus::Failed;
  c.artifacts = std::move(r.artifacts);
  return c;
}

std::vector<std::int64_t> random_permutation(CounterRng& rng, std::int64_t p) {
  std::vector<std::int64_t> t(static_cast<std::size_t>(p));
  std::iota(t.begin(), t.end(), 0);
  for (std::int64_t i = p - 1; i > 0; --i) std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(rng.integer(0, i))]);
  return t;
}

/// A single p-cycle visiting the states in a random order.
std::vector<std::int64_t> random_cycle(CounterRng& rng, std::int64_t p) {
  const auto order = random_permutation(rng, p);
  std::vector<std::int64_t> t(static_cast<std::size_t>(p));
  for (std::int64_t i = 0; i < p; ++i) {
    t[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = order[static_cast<std::size_t>((i + 1) % p)];
  }
  return t;
}

double fourier_fourth_moment(const std::vector<Complex>& f) {
  const auto p = static_cast<std::int64_t>(f.size());
  double total = 0.0;
  for (std::int64_t xi = 0; xi < p; ++xi) {
    Complex s{0.0, 0.0};
    for (std::int64_t n = 0; n < p; ++n) {
      s += f[static_cast<std::size_t>(n)] * unit_phase(-static_cast<double>((xi * n) % p) / static_cast<double>(p));
    }
    total += std::pow(std::abs(s) / static_cast<double>(p), 4);
  }
  return total;
}

std::string fmt(double v) { return format_double(v); }

// ---------------------------------------------------------------------------
// inequalities

std::vector<SuiteCase> inequalities() {
  std::vector<SuiteCase> cases;
  cases.push_back(from_run("vdc", {{"kind", "vdc"}, {"draws", 1000}, {"max_n", 512}, {"seed", kVdcSeed}}));
  cases.push_back(from_run("vdc_classical", {{"kind", "vdc"},
                                             {"form", "classical"},
                                             {"draws", 1000},
                                             {"max_n", 512},
                                             {"seed", kVdcSeed}}));
  cases.push_back(from_run("assani", {{"kind", "assani"}, {"draws", 1000}, {"max_n", 128}, {"seed", kAssaniSeed}}));
  cases.push_back(from_run("cubic_k3",
                           {{"kind", "cubic_estimate"}, {"k", 3}, {"draws", 200}, {"max_n", 16}, {"seed", kCubic3Seed}}));
  cases.push_back(from_run("cubic_k4",
                           {{"kind", "cubic_estimate"}, {"k", 4}, {"draws", 50}, {"max_n", 8}, {"seed", kCubic4Seed}}));
  return cases;
}

// ---------------------------------------------------------------------------
// oracles

SuiteCase gowers_battery(std::int64_t p) {
  SuiteCase c;
  c.name = "gowers_p" + std::to_string(p);
  std::string csv = "function,k,norm,u2_fourth,fourier_fourth\n";
  int failures = 0;
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto f = battery_function(kBatterySeed + static_cast<std::uint64_t>(p), i, p);
    std::array<double, 5> u{};
    for (int k = 1; k <= 4; ++k) u[k] = gowers_norm_cyclic(f, k);
    for (int k = 1; k <= 3; ++k) failures += u[k] <= u[k + 1] + kOracleTol ? 0 : 1;
    const double fourier = fourier_fourth_moment(f);
    const double u2 = std::pow(u[2], 4);
    failures += std::abs(u2 - fourier) <= kOracleTol ? 0 : 1;
    for (int k = 1; k <= 4; ++k) {
      csv += std::to_string(i) + "," + std::to_string(k) + "," + fmt(u[k]) + "," + fmt(u2) + "," + fmt(fourier) + "\n";
    }
  }
  c.status = failures == 0 ? CaseStatus::Passed : CaseStatus::Failed;
  c.detail = std::to_string(failures) + " violations";
  c.artifacts.push_back({c.name + ".csv", csv});
  return c;
}

SuiteCase hk_against_gowers() {
  SuiteCase c;
  c.name = "hk_vs_gowers";
  std::string csv = "p,k,hk,gowers,diff\n";
  int failures = 0;
  for (std::int64_t p = 2; p <= 13; ++p) {
    CounterRng rng(kPermutationSeed, static_cast<std::uint64_t>(p));
    const SystemSpec sys = SystemSpec::finite_permutation(random_cycle(rng, p));
    const auto values = battery_function(kBatterySeed, static_cast<std::uint64_t>(100 + p), p);
    const Observable f = Observable::table(values);
    // Orbit table of state 0 on Z_p.
    std::vector<Complex> table(static_cast<std::size_t>(p));
    for (std::int64_t n = 0; n < p; ++n) table[static_cast<std::size_t>(n)] = f(sys, iterate(sys, StatePoint::index(0), n));
    for (int k = 1; k <= 3; ++k) {
      const double hk = hk_seminorm_estimate(sys, std::nullopt, f, k, p, p);
      const double gw = gowers_norm_cyclic(table, k);
      failures += std::abs(hk - gw) <= kOracleTol ? 0 : 1;
      csv += std::to_string(p) + "," + std::to_string(k) + "," + fmt(hk) + "," + fmt(gw) + "," + fmt(hk - gw) + "\n";
    }
  }
  c.status = failures == 0 ? CaseStatus::Passed : CaseStatus::Failed;
  c.detail = std::to_string(failures) + " mismatches";
  c.artifacts.push_back({c.name + ".csv", csv});
  return c;
}

SuiteCase selfjoining_exactness() {
  SuiteCase c;
  c.name = "selfjoining_exact";
  std::string csv = "system,p,period,exact,finite\n";
  int failures = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(kPermutationSeed + 1, s);
    const std::int64_t p = rng.integer(1, 64);
    const SystemSpec sys = SystemSpec::finite_permutation(random_permutation(rng, p));
    JoiningQuery q;
    const int d = static_cast<int>(rng.integer(1, 3));
    for (int i = 0; i < d; ++i) {
      q.exponents.push_back(i == 0 ? rng.integer(1, 3) : q.exponents.back() + rng.integer(1, 3));
      std::vector<bool> members(static_cast<std::size_t>(p));
      for (auto&& m : members) m = rng.uniform() < 0.5;
      q.observables.push_back(Observable::indicator(members));
    }
    const JoiningEstimate exact = selfjoining_correlation(sys, q);
    q.mode = JoiningMode::Finite;
    q.N = exact.N;
    const JoiningEstimate finite = selfjoining_correlation(sys, q);
    failures += exact.value == finite.value ? 0 : 1;
    csv += std::to_string(s) + "," + std::to_string(p) + "," + std::to_string(exact.N) + "," +
           fmt(exact.value.real()) + "," + fmt(finite.value.real()) + "\n";
  }
  c.status = failures == 0 ? CaseStatus::Passed : CaseStatus::Failed;
  c.detail = std::to_string(failures) + " mismatches";
  c.artifacts.push_back({c.name + ".csv", csv});
  return c;
}

SuiteCase quadratic_phase() {
  SuiteCase c;
  c.name = "quadratic_phase";
  const double theta = std::sqrt(2.0) - 1.0;
  const WeightSpec w = WeightSpec::poly_phase(theta, 2);
  double worst = 0.0;
  for (std::int64_t n = -10000; n <= 10000; ++n) {
    const __float128 x = static_cast<__float128>(n) * static_cast<__float128>(n) * static_cast<__float128>(theta);
    const auto whole = static_cast<std::int64_t>(x);
    const double frac = static_cast<double>(x - static_cast<__float128>(whole));
    const Complex direct = std::polar(1.0, 2.0 * kPi * frac);
    worst = std::max(worst, std::abs(weight_at(w, n) - direct));
  }
  c.status = worst <= 1e-12 ? CaseStatus::Passed : CaseStatus::Failed;
  c.detail = "max deviation " + fmt(worst);
  c.artifacts.push_back({c.name + ".csv", "theta,n_max,max_deviation\n" + fmt(theta) + ",10000," + fmt(worst) + "\n"});
  return c;
}

std::vector<SuiteCase> oracles() {
  std::vector<SuiteCase> cases;
  for (std::int64_t p : {5, 7, 11, 13}) cases.push_back(gowers_battery(p));
  cases.push_back(hk_against_gowers());
  cases.push_back(selfjoining_exactness());
  cases.push_back(quadratic_phase());
  return cases;
}

// ---------------------------------------------------------------------------
// convergence

struct SeriesRow {
  std::int64_t n = 0;
  Complex value;
  double tail = 0.0;
};

std::vector<SeriesRow> parse_series(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  std::vector<SeriesRow> rows;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string n_s, re, im, tail_s;
    std::getline(row, n_s, ',');
    std::getline(row, re, ',');
    std::getline(row, im, ',');
    std::getline(row, tail_s, ',');
    rows.push_back({std::stoll(n_s), {std::stod(re), std::stod(im)}, std::stod(tail_s)});
  }
  return rows;
}

/// Tails at dyadic N >= 64 must be nonincreasing.
bool dyadic_tails_decrease(const std::vector<SeriesRow>& rows) {
  double previous = INFINITY;
  for (const auto& r : rows) {
    if (r.n < 64 || (r.n & (r.n - 1)) != 0) continue;
    if (r.tail > previous) return false;
    previous = r.tail;
  }
  return true;
}

std::vector<SuiteCase> convergence() {
  std::vector<SuiteCase> cases;
  const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int j = 0; j < 20; ++j) {
    const double t = (j + 0.5) / 20.0;
    const Json cfg = {
        {"kind", "average"},
        {"system", {{"variant", "torus"}, {"alpha", {alpha}}}},
        {"state", {{"coords", {0.0}}}},
        {"observables", {{{"variant", "character"}, {"character_m", {1}}}, {{"variant", "character"}, {"character_m", {1}}}}},
        {"exponents", {1, 2}},
        {"weight", {{"variant", "trig"}, {"t", t}}},
        {"schedule", {{"max_n", 1 << 16}}},
    };
    SuiteCase c = from_run("wiener_wintner_t" + std::to_string(j), cfg);
    // The summand is e(n(t + 3 alpha)), so |A_N| <= 2 / (N |1 - e(t + 3 alpha)|).
    const double gap = std::abs(1.0 - unit_phase(mod1(t + 3.0 * alpha)));
    const auto rows = parse_series(c.artifacts.front().content);
    int violations = 0;
    for (const auto& r : rows) violations += std::abs(r.value) <= 2.0 / (static_cast<double>(r.n) * gap) + 1e-9 ? 0 : 1;
    const bool tails = dyadic_tails_decrease(rows);
    if (violations > 0 || !tails) c.status = CaseStatus::Failed;
    c.detail = std::to_string(violations) + " bound violations, tails " + (tails ? "nonincreasing" : "increasing");
    cases.push_back(std::move(c));
  }
  // Periodic system of period 8: every dyadic N >= 8 is a period multiple,
  // where the average is exact, so those tails vanish.
  const Json periodic = {
      {"kind", "average"},
      {"system", {{"variant", "permutation"}, {"perm", {1, 2, 3, 4, 5, 6, 7, 0, 9, 10, 11, 8, 13, 12, 14}}}},
      {"state", {{"index", 3}}},
      {"observables",
       {{{"variant", "table"},
         {"table", {1.0, -0.5, 0.25, 1.0, -1.0, 0.5, 0.75, -0.25, 1.0, 0.0, -1.0, 0.5, 1.0, -1.0, 0.125}}}}},
      {"exponents", {1}},
      {"schedule", {{"max_n", 1024}}},
  };
  SuiteCase c = from_run("periodic_cycle", periodic);
  if (!dyadic_tails_decrease(parse_series(c.artifacts.front().content))) c.status = CaseStatus::Failed;
  cases.push_back(std::move(c));
  return cases;
}

std::string status_name(CaseStatus s) {
  switch (s) {
    case CaseStatus::Passed:
      return "passed";
    case CaseStatus::Failed:
      return "failed";
    case CaseStatus::Skipped:
      return "skipped";
  }
  return "unknown";
}

}  // namespace

int SuiteReport::count(CaseStatus s) const {
  return static_cast<int>(std::count_if(cases.begin(), cases.end(), [&](const SuiteCase& c) { return c.status == s; }));
}

std::string SuiteReport::summary_json() const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSchemaVersion;
  j["suite"] = name;
  j["passed"] = count(CaseStatus::Passed);
  j["failed"] = count(CaseStatus::Failed);
  j["skipped"] = count(CaseStatus::Skipped);
  j["cases"] = nlohmann::ordered_json::array();
  for (const auto& c : cases) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["status"] = status_name(c.status);
    if (!c.detail.empty()) e["detail"] = c.detail;
    for (const auto& a : c.artifacts) e["artifacts"].push_back(a.name);
    j["cases"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::vector<Artifact> SuiteReport::artifacts() const {
  std::vector<Artifact> out;
  for (const auto& c : cases) out.insert(out.end(), c.artifacts.begin(), c.artifacts.end());
  out.push_back({name + "_summary.json", summary_json()});
  return out;
}

std::vector<std::string> suite_names() { return {"inequalities", "oracles", "convergence"}; }

SuiteReport run_suite(std::string_view name) {
  SuiteReport r;
  r.name = std::string(name);
  if (name == "inequalities") {
    r.cases = inequalities();
  } else if (name == "oracles") {
    r.cases = oracles();
  } else if (name == "convergence") {
    r.cases = convergence();
  } else {
    throw ConfigError("unknown suite \"" + std::string(name) + "\" (expected inequalities, oracles or convergence)");
  }
  return r;
}

}  // namespace ergolab
