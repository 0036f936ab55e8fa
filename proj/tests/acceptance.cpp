// Acceptance battery: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "ergolab/draws.hpp"
#include "ergolab/joinings.hpp"
#include "ergolab/nilseq.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/suites.hpp"
#include "ergolab/uniformity.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

constexpr std::uint64_t kVdcSeed = 20240601;
constexpr std::uint64_t kAssaniSeed = 20240602;
constexpr std::uint64_t kCubic3Seed = 20240603;
constexpr std::uint64_t kCubic4Seed = 20240604;
constexpr std::uint64_t kBatterySeed = 20240605;
constexpr std::uint64_t kPermutationSeed = 20240606;

struct Outcome {
  bool passed = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 for none
  std::function<Outcome()> run;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

Outcome van_der_corput() {
  int failures = 0, classical_failures = 0, first = -1;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto d = vdc_draw(kVdcSeed, i, 512);
    const auto r = van_der_corput_check(d.u, d.N, d.H);
    if (!r.holds && first < 0) first = static_cast<int>(i);
    failures += r.holds ? 0 : 1;
    classical_failures += r.holds_classical ? 0 : 1;
  }
  std::string detail = std::to_string(failures) + "/1000 draws violate the inequality";
  if (first >= 0) detail += " (first: draw " + std::to_string(first) + ")";
  detail += "; sums truncated at N-h: " + std::to_string(classical_failures) + "/1000 violations";
  return {failures == 0, detail};
}

Outcome assani() {
  int failures = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto d = assani_draw(kAssaniSeed, i, 128);
    failures += assani_check(d.N, d.a, d.b, d.c).holds ? 0 : 1;
  }
  return {failures == 0, std::to_string(failures) + "/1000 draws violate the chain"};
}

Outcome cubic_estimate() {
  int failures = 0, crosscheck_failures = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto d = cubic_draw(kCubic3Seed, i, 3, 16);
    const CubeSpec spec(3);
    failures += cubic_estimate_check(spec, d.N, d.sequences).holds ? 0 : 1;
    if (i >= 10) continue;
    // Designated draws: every inner sup against a 4096-point brute-force grid.
    for (std::int64_t h1 = 0; h1 < d.N; ++h1) {
      const std::vector<std::int64_t> prefix{h1};
      const auto inner = cubic_estimate_inner(spec, d.N, d.sequences, prefix);
      const auto s = sup_trig(inner, 8, 1.0);
      const std::vector<Complex> c(inner.values().begin(), inner.values().end());
      const double brute = oracle::grid_sup(c, 4096);
      const double L = static_cast<double>(c.size());
      const bool ok = brute <= s.certified_upper * (1 + 1e-12) + 1e-12 &&
                      s.grid_max <= brute / (1.0 - kPi * (L - 1) / 4096.0) * (1 + 1e-12) + 1e-12;
      crosscheck_failures += ok ? 0 : 1;
    }
  }
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto d = cubic_draw(kCubic4Seed, i, 4, 8);
    failures += cubic_estimate_check(CubeSpec(4), d.N, d.sequences).holds ? 0 : 1;
  }
  return {failures == 0 && crosscheck_failures == 0,
          std::to_string(failures) + "/250 draws violate the estimate, " + std::to_string(crosscheck_failures) +
              " brute-force sup mismatches"};
}

std::vector<std::pair<std::int64_t, std::vector<Complex>>> gowers_battery() {
  std::vector<std::pair<std::int64_t, std::vector<Complex>>> battery;
  for (std::int64_t p : {5, 7, 11, 13}) {
    for (std::uint64_t i = 0; i < 50; ++i) battery.emplace_back(p, battery_function(kBatterySeed + static_cast<std::uint64_t>(p), i, p));
  }
  return battery;
}

Outcome gowers_monotone() {
  int failures = 0;
  double worst = -INFINITY;
  for (const auto& [p, f] : gowers_battery()) {
    double prev = gowers_norm_cyclic(f, 1);
    for (int k = 1; k <= 3; ++k) {
      const double next = gowers_norm_cyclic(f, k + 1);
      worst = std::max(worst, prev - next);
      failures += prev <= next + 1e-9 ? 0 : 1;
      prev = next;
    }
  }
  return {failures == 0, std::to_string(failures) + " violations over 200 functions, max U^k - U^{k+1} = " + num(worst)};
}

Outcome u2_fourier() {
  double worst = 0.0;
  for (const auto& [p, f] : gowers_battery()) {
    double fourier = 0.0;
    for (auto c : oracle::dft(f)) fourier += std::norm(c) * std::norm(c);
    worst = std::max(worst, std::abs(std::pow(gowers_norm_cyclic(f, 2), 4) - fourier));
  }
  return {worst <= 1e-9, "max deviation " + num(worst)};
}

Outcome hk_oracle() {
  double worst = 0.0;
  int cases = 0;
  for (std::int64_t p = 1; p <= 13; ++p) {
    for (std::uint64_t trial = 0; trial < 4; ++trial) {
      CounterRng rng(kPermutationSeed + 7, static_cast<std::uint64_t>(p) * 16 + trial);
      // A random p-cycle.
      std::vector<std::int64_t> order(static_cast<std::size_t>(p));
      std::iota(order.begin(), order.end(), 0);
      for (std::int64_t i = p - 1; i > 0; --i) std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(rng.integer(0, i))]);
      std::vector<std::int64_t> t(static_cast<std::size_t>(p));
      for (std::int64_t i = 0; i < p; ++i) t[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = order[static_cast<std::size_t>((i + 1) % p)];
      const auto values = battery_function(kBatterySeed + 99, static_cast<std::uint64_t>(p) * 16 + trial, p);
      std::vector<Complex> orbit(static_cast<std::size_t>(p));
      for (std::int64_t n = 0; n < p; ++n) orbit[static_cast<std::size_t>(n)] = values[static_cast<std::size_t>(oracle::perm_power(t, 0, n))];
      const auto sys = SystemSpec::finite_permutation(t);
      for (int k = 1; k <= 3; ++k) {
        for (std::int64_t m : {1, 2}) {
          const double hk = hk_seminorm_estimate(sys, std::nullopt, Observable::table(values), k, m * p, m * p);
          worst = std::max(worst, std::abs(hk - gowers_norm_cyclic(orbit, k)));
          ++cases;
        }
      }
    }
  }
  return {worst <= 1e-9, std::to_string(cases) + " cases, max deviation " + num(worst)};
}

Outcome selfjoining() {
  int failures = 0;
  std::int64_t largest_period = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    CounterRng rng(kPermutationSeed + 11, s);
    const std::int64_t p = rng.integer(1, 64);
    std::vector<std::int64_t> t(static_cast<std::size_t>(p));
    std::iota(t.begin(), t.end(), 0);
    for (std::int64_t i = p - 1; i > 0; --i) std::swap(t[static_cast<std::size_t>(i)], t[static_cast<std::size_t>(rng.integer(0, i))]);
    JoiningQuery q;
    std::vector<std::vector<bool>> sets;
    const auto d = rng.integer(1, 3);
    while (static_cast<std::int64_t>(q.exponents.size()) < d) {
      const auto a = rng.integer(-5, 5);
      if (a == 0 || std::find(q.exponents.begin(), q.exponents.end(), a) != q.exponents.end()) continue;
      q.exponents.push_back(a);
      std::vector<bool> members(static_cast<std::size_t>(p));
      for (std::size_t x = 0; x < members.size(); ++x) members[x] = rng.uniform() < 0.5;
      sets.push_back(members);
      q.observables.push_back(Observable::indicator(members));
    }
    const auto sys = SystemSpec::finite_permutation(t);
    const auto exact = selfjoining_correlation(sys, q);
    q.mode = JoiningMode::Finite;
    q.N = oracle::perm_order(t);
    largest_period = std::max(largest_period, q.N);
    const auto finite = selfjoining_correlation(sys, q);
    const auto [count, denom] = oracle::joining_count(t, q.exponents, sets);
    const double hand = static_cast<double>(count) / static_cast<double>(denom);
    failures += exact.value == finite.value && exact.value == Complex(hand, 0.0) ? 0 : 1;
  }
  return {failures == 0, std::to_string(failures) + "/100 systems disagree (largest period " +
                             std::to_string(largest_period) + ")"};
}

Outcome wiener_wintner() {
  const double alpha = (std::sqrt(5.0) - 1.0) / 2.0;
  const auto sys = SystemSpec::torus_rotation({alpha});
  const std::vector<Observable> obs{Observable::character({1}), Observable::character({1})};
  const std::vector<std::int64_t> exps{1, 2};
  const auto schedule = default_schedule(1 << 16);
  int bound_failures = 0, tail_failures = 0;
  for (int j = 0; j < 20; ++j) {
    const double t = (j + 0.5) / 20.0;
    const auto s = multilinear_average(sys, StatePoint::coords({0.0}), obs, exps, WeightSpec::trig_phase(t), schedule);
    const double gap = std::abs(1.0 - oracle::phase(std::fmod(t + 3.0 * alpha, 1.0)));
    double previous = INFINITY;
    for (std::size_t i = 0; i < schedule.size(); ++i) {
      const auto N = schedule[i];
      bound_failures += std::abs(s.averages[i]) <= 2.0 / (static_cast<double>(N) * gap) + 1e-9 ? 0 : 1;
      if (N < 64 || (N & (N - 1)) != 0) continue;
      tail_failures += s.cauchy_tail[i] <= previous ? 0 : 1;
      previous = s.cauchy_tail[i];
    }
  }
  return {bound_failures == 0 && tail_failures == 0,
          std::to_string(bound_failures) + " bound violations, " + std::to_string(tail_failures) +
              " tail increases over 20 frequencies"};
}

Outcome quadratic_phase() {
  double worst = 0.0;
  for (double theta : {std::sqrt(2.0) - 1.0, 0.7182818284590451, 0.25, 1e-6, 0.999999}) {
    const auto w = WeightSpec::poly_phase(theta, 2);
    for (std::int64_t n = -10000; n <= 10000; ++n) worst = std::max(worst, std::abs(weight_at(w, n) - oracle::quadratic_phase(n, theta)));
  }
  return {worst <= 1e-12, "max deviation " + num(worst)};
}

Outcome determinism() {
  int mismatches = 0;
  for (const auto& name : suite_names()) {
    std::vector<std::vector<Artifact>> runs;
    for (int workers : {1, 2, 8}) {
      set_worker_count(workers);
      runs.push_back(run_suite(name).artifacts());
    }
    for (std::size_t i = 1; i < runs.size(); ++i) {
      if (runs[i].size() != runs[0].size()) {
        ++mismatches;
        continue;
      }
      for (std::size_t j = 0; j < runs[0].size(); ++j) {
        mismatches += runs[i][j].name == runs[0][j].name && runs[i][j].content == runs[0][j].content ? 0 : 1;
      }
    }
  }
  set_worker_count(1);
  return {mismatches == 0, std::to_string(mismatches) + " artifacts differ across 1, 2 and 8 workers"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "van der Corput inequality", 30, van_der_corput},
      {2, "Assani chain", 60, assani},
      {3, "cubic estimate", 300, cubic_estimate},
      {4, "Gowers monotonicity", 120, gowers_monotone},
      {5, "U2 Fourier identity", 0, u2_fourier},
      {6, "Host-Kra recursion vs cyclic Gowers norm", 0, hk_oracle},
      {7, "self-joining exactness", 0, selfjoining},
      {8, "Wiener-Wintner diagnostic", 0, wiener_wintner},
      {9, "quadratic phase realization", 0, quadratic_phase},
      {10, "determinism across worker counts", 0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit > 0 && secs > c.time_limit) {
      o.passed = false;
      o.detail += "; over the " + num(c.time_limit) + " s limit";
    }
    failed += o.passed ? 0 : 1;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
