#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/uniformity.hpp"
#include "oracles.hpp"

using namespace ergolab;

namespace {

SequenceWindow constant(std::int64_t n, Complex c, std::int64_t offset = 0) {
  return SequenceWindow(offset, std::vector<Complex>(static_cast<std::size_t>(n), c), std::max(1.0, std::abs(c)));
}

SequenceWindow alternating(std::int64_t n) {
  std::vector<Complex> v;
  for (std::int64_t i = 0; i < n; ++i) v.push_back(i % 2 == 0 ? 1.0 : -1.0);
  return SequenceWindow(0, v, 1.0);
}

SequenceWindow linear_phase(std::int64_t n, double theta) {
  std::vector<Complex> v;
  for (std::int64_t i = 0; i < n; ++i) v.push_back(unit_phase(mod1(static_cast<double>(i) * theta)));
  return SequenceWindow(0, v, 1.0);
}

std::vector<SequenceWindow> copies(std::size_t count, const SequenceWindow& w) { return std::vector<SequenceWindow>(count, w); }

std::vector<Complex> character(std::int64_t p, std::int64_t xi) {
  std::vector<Complex> f;
  for (std::int64_t n = 0; n < p; ++n) f.push_back(unit_phase(static_cast<double>((xi * n) % p) / static_cast<double>(p)));
  return f;
}

double fourier_u2(const std::vector<Complex>& f) {
  double total = 0.0;
  for (auto c : oracle::dft(f)) total += std::norm(c) * std::norm(c);
  return total;
}

}  // namespace

TEST_CASE("CubeSpec invariants") {
  for (int k = 1; k <= 6; ++k) {
    const CubeSpec spec(k);
    const auto star = spec.star();
    CHECK(star.size() == spec.vertex_count() - 1);
    std::set<int> images;
    for (auto eps : star) images.insert(CubeSpec::phi(eps));
    CHECK(images.size() == star.size());
    CHECK(*images.begin() == 1);
    CHECK(*images.rbegin() == static_cast<int>(spec.vertex_count()) - 1);
    for (int i = 1; i <= k; ++i) {
      CHECK(spec.face(i).size() == (std::size_t{1} << (k - 1)) - 1);
      for (int j = 1; j <= k; ++j) {
        if (i == j) continue;
        const auto a = spec.difference_set(i, j), b = spec.difference_set(j, i);
        for (auto e : a) CHECK(std::find(b.begin(), b.end(), e) == b.end());
        for (auto e : a) CHECK((!CubeSpec::coordinate(e, i) && CubeSpec::coordinate(e, j)));
      }
    }
  }
  CHECK_THROWS_AS(CubeSpec(0), ConfigError);
}

TEST_CASE("cubic_average examples") {
  const CubeSpec two(2), three(3);
  CHECK(std::abs(cubic_average(two, 8, copies(3, constant(15, 1.0))) - 1.0) < 1e-15);
  CHECK(cubic_average(two, 2, copies(3, alternating(3)), CubicMethod::Direct) == Complex(1, 0));
  CHECK(std::abs(cubic_average(three, 4, copies(7, constant(10, 1.0))) - 1.0) < 1e-15);
  CHECK_THROWS_AS(cubic_average(two, 8, copies(3, constant(8, 1.0))), WindowError);
  CHECK_THROWS_AS(cubic_average(two, 8, copies(2, constant(15, 1.0))), ConfigError);
  CHECK_THROWS_AS(cubic_average(three, 1000, copies(7, constant(2998, 1.0)), CubicMethod::Auto, Budget{1000000}),
                  BudgetError);
}

TEST_CASE("k=2 convolution path matches the naive double sum") {
  CounterRng rng(41, 0);
  const CubeSpec two(2);
  for (std::int64_t N : {1, 2, 3, 17, 32, 100, 256}) {
    std::vector<SequenceWindow> seqs;
    std::vector<std::vector<Complex>> raw;
    for (int j = 0; j < 3; ++j) {
      std::vector<Complex> v(static_cast<std::size_t>(2 * N - 1));
      for (auto& z : v) z = {rng.uniform(-1, 1), rng.uniform(-1, 1)};
      raw.push_back(v);
      seqs.emplace_back(0, v, 2.0);
    }
    const Complex fft = cubic_average(two, N, seqs, CubicMethod::Convolution);
    const Complex direct = cubic_average(two, N, seqs, CubicMethod::Direct);
    const Complex naive = oracle::cubic2_naive(raw[0], raw[1], raw[2], N);
    CHECK(std::abs(fft - naive) <= 1e-9);
    CHECK(std::abs(direct - naive) <= 1e-12);
  }
}

TEST_CASE("assani_check examples") {
  const auto ones = assani_check(4, constant(4, 1.0), constant(4, 1.0), constant(7, 1.0));
  CHECK(ones.lhs_sq == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ones.mid_sq == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ones.rhs_sup_sq >= 3.0625);
  CHECK(ones.holds);
  const auto zero = assani_check(4, constant(4, 1.0), constant(4, 1.0), constant(7, 0.0));
  CHECK(zero.lhs_sq == 0.0);
  CHECK(zero.mid_sq == 0.0);
  CHECK(zero.rhs_sup_sq == 0.0);
  CHECK(zero.holds);
  CHECK_THROWS_AS(assani_check(4, constant(4, 1.0), constant(4, 1.0), constant(6, 1.0)), WindowError);
  CHECK_THROWS_AS(assani_check(2, constant(2, Complex(0, 1)), constant(2, 1.0), constant(3, 1.0)), ConfigError);
}

TEST_CASE("cubic_estimate_check examples") {
  const auto ones = cubic_estimate_check(CubeSpec(3), 2, copies(7, constant(4, 1.0)));
  CHECK(ones.lhs_sq == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ones.rhs >= 2.0);
  CHECK(ones.holds);
  const auto zero = cubic_estimate_check(CubeSpec(3), 2, copies(7, constant(4, 0.0)));
  CHECK(zero.lhs_sq == 0.0);
  CHECK(zero.rhs == 0.0);
  CHECK(zero.holds);
  CHECK_THROWS_AS(cubic_estimate_check(CubeSpec(2), 2, copies(3, constant(4, 1.0))), ConfigError);
  CHECK_THROWS_AS(cubic_estimate_check(CubeSpec(5), 2, copies(31, constant(6, 1.0))), ConfigError);
}

TEST_CASE("cubic estimate inner sequence matches a direct product") {
  CounterRng rng(42, 0);
  const CubeSpec spec(4);
  const std::int64_t N = 5;
  std::vector<SequenceWindow> seqs;
  for (int j = 0; j < 15; ++j) {
    std::vector<Complex> v(static_cast<std::size_t>(4 * (N - 1) + 1));
    for (auto& z : v) z = {rng.uniform(-1, 1), 0.0};
    seqs.emplace_back(0, v, 1.0);
  }
  const auto A = spec.difference_set(3, 4);  // eps_3 = 0, eps_4 = 1
  for (std::int64_t h1 = 0; h1 < N; ++h1) {
    for (std::int64_t h2 = 0; h2 < N; ++h2) {
      const std::vector<std::int64_t> prefix{h1, h2};
      const auto inner = cubic_estimate_inner(spec, N, seqs, prefix);
      for (std::int64_t h = 0; h < N; ++h) {
        Complex expect = 1.0;
        for (auto eps : A) {
          const std::int64_t idx = h + (CubeSpec::coordinate(eps, 1) ? h1 : 0) + (CubeSpec::coordinate(eps, 2) ? h2 : 0);
          expect *= seqs[static_cast<std::size_t>(CubeSpec::phi(eps) - 1)][idx];
        }
        CHECK(inner[h] == expect);
      }
    }
  }
}

TEST_CASE("local_correlation examples") {
  const std::vector<std::int64_t> h3{1, 2, 3}, h1{1};
  CHECK(std::abs(local_correlation(constant(20, 1.0), 3, h3, 8) - 1.0) < 1e-15);
  CHECK(local_correlation(alternating(11), 1, h1, 10) == Complex(-1, 0));
  const double theta = 0.137;
  for (std::int64_t h : {0, 1, 4, 9}) {
    const std::vector<std::int64_t> hv{h};
    CHECK(std::abs(local_correlation(linear_phase(40, theta), 1, hv, 30) - unit_phase(-theta * h)) < 1e-12);
  }
  CHECK_THROWS_AS(local_correlation(constant(10, 1.0), 1, h1, 10), WindowError);
}

TEST_CASE("local_seminorm examples") {
  for (int k = 1; k <= 3; ++k) {
    const auto r = local_seminorm(constant(30, 1.0), k, 4, 10);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_FALSE(r.clamped);
  }
  CHECK(local_seminorm(alternating(20), 1, 4, 10).value == 0.0);
  for (int m = 1; m <= 3; ++m) {
    const std::int64_t H = 5 * m, N = 5 * m;
    const auto r = local_seminorm(linear_phase(N + 2 * (H - 1), 0.2), 2, H, N);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(local_seminorm(constant(10, 1.0), 2, 4, 5), WindowError);
}

TEST_CASE("correlation table of a real window is real") {
  CounterRng rng(43, 0);
  std::vector<Complex> v(60);
  for (auto& z : v) z = {rng.uniform(-1, 1), 0.0};
  const auto t = correlation_table(SequenceWindow(0, v, 1.0), 2, 5, 40);
  CHECK(t.entries.size() == 25);
  for (auto c : t.entries) CHECK(std::abs(c.imag()) <= 1e-12);
  CHECK(t.tuple(7) == std::vector<std::int64_t>{1, 2});
}

TEST_CASE("gowers_norm_cyclic examples") {
  for (std::int64_t p : {2, 5, 7, 13}) {
    const std::vector<Complex> one(static_cast<std::size_t>(p), 1.0);
    for (int k = 1; k <= 3; ++k) CHECK(gowers_norm_cyclic(one, k) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gowers_norm_cyclic(character(p, 1), 1) <= 1e-7);
    CHECK(gowers_norm_cyclic(character(p, 1), 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::pow(gowers_norm_cyclic(character(p, 1), 2), 4) == doctest::Approx(fourier_u2(character(p, 1))).epsilon(1e-12));
  }
  const std::vector<Complex> big(100, 1.0);
  CHECK_THROWS_AS(gowers_norm_cyclic(big, 4, Budget{1000000}), BudgetError);
}

TEST_CASE("Gowers norms: U2 Fourier identity and monotonicity on random functions") {
  CounterRng rng(44, 0);
  for (std::int64_t p : {3, 5, 8, 11}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Complex> f(static_cast<std::size_t>(p));
      for (auto& z : f) z = std::polar(std::sqrt(rng.uniform()), oracle::kTwoPi * rng.uniform());
      const double u1 = gowers_norm_cyclic(f, 1), u2 = gowers_norm_cyclic(f, 2), u3 = gowers_norm_cyclic(f, 3);
      Complex mean = 0.0;
      for (auto z : f) mean += z;
      CHECK(u1 == doctest::Approx(std::abs(mean) / static_cast<double>(p)).epsilon(1e-12));
      CHECK(std::abs(std::pow(u2, 4) - fourier_u2(f)) <= 1e-12);
      CHECK(u1 <= u2 + 1e-12);
      CHECK(u2 <= u3 + 1e-12);
    }
  }
}

TEST_CASE("hk_seminorm_estimate examples") {
  const auto flip = SystemSpec::finite_permutation({1, 0});
  const auto f = Observable::table({1.0, -1.0});
  const auto one = Observable::character({0});
  for (int k = 1; k <= 4; ++k) CHECK(hk_seminorm_estimate(flip, std::nullopt, one, k, 2, 2) == doctest::Approx(1.0));
  CHECK(hk_seminorm_estimate(flip, StatePoint::index(0), f, 1, 2, 2) == 0.0);
  CHECK(hk_seminorm_estimate(flip, StatePoint::index(0), f, 2, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(hk_seminorm_estimate(flip, std::nullopt, f, 2, 2, 2) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(hk_seminorm_estimate(flip, std::nullopt, f, 7, 2, 2), ConfigError);
  CHECK_THROWS_AS(hk_seminorm_estimate(SystemSpec::torus_rotation({0.1}), std::nullopt, one, 1, 2, 2), ConfigError);
}

TEST_CASE("hk estimate on a cycle equals the cyclic Gowers norm of its orbit table") {
  CounterRng rng(45, 0);
  for (std::int64_t p = 2; p <= 9; ++p) {
    std::vector<std::int64_t> cycle(static_cast<std::size_t>(p));
    for (std::int64_t i = 0; i < p; ++i) cycle[static_cast<std::size_t>(i)] = (i + 1) % p;
    std::vector<double> table(static_cast<std::size_t>(p));
    for (auto& v : table) v = rng.uniform(-1, 1);
    std::vector<Complex> f(table.begin(), table.end());
    const auto sys = SystemSpec::finite_permutation(cycle);
    for (int k = 1; k <= 3; ++k) {
      const double hk = hk_seminorm_estimate(sys, std::nullopt, Observable::table(f), k, p, p);
      CHECK(std::abs(hk - gowers_norm_cyclic(f, k)) <= 1e-9);
    }
  }
}

TEST_CASE("hk_vdc_bound_report examples") {
  const auto flip = SystemSpec::finite_permutation({1, 0});
  const auto f = Observable::table({1.0, -1.0});
  const auto one = Observable::table({1.0, 1.0});
  for (std::int64_t a : {1, -3, 5}) {
    const auto r = hk_vdc_bound_report(flip, std::nullopt, one, a, 1, 2, 2);
    CHECK(r.lhs == doctest::Approx(1.0));
    CHECK(r.rhs == doctest::Approx(static_cast<double>(std::abs(a))));
  }
  const auto a1 = hk_vdc_bound_report(flip, std::nullopt, f, 1, 1, 2, 2);
  CHECK(a1.lhs == doctest::Approx(1.0));
  CHECK(a1.rhs == doctest::Approx(1.0));
  const auto a2 = hk_vdc_bound_report(flip, std::nullopt, f, 2, 1, 2, 2);
  CHECK(a2.lhs == doctest::Approx(1.0));
  CHECK(a2.rhs == doctest::Approx(2.0));
  CHECK_THROWS_AS(hk_vdc_bound_report(flip, std::nullopt, f, 0, 1, 2, 2), ConfigError);
}
