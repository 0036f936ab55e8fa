#include "ergolab/draws.hpp"

#include <cmath>

#include "ergolab/rng.hpp"

namespace ergolab {

namespace {

Complex disk_point(CounterRng& rng) {
  const double r = std::sqrt(rng.uniform());
  return std::polar(r, 2.0 * kPi * rng.uniform());
}

SequenceWindow real_window(CounterRng& rng, std::int64_t offset, std::int64_t length) {
  std::vector<Complex> v(static_cast<std::size_t>(length));
  for (auto& z : v) z = {rng.uniform(-1.0, 1.0), 0.0};
  return SequenceWindow(offset, std::move(v), 1.0);
}

}  // namespace

VdcDraw vdc_draw(std::uint64_t seed, std::uint64_t i, std::int64_t max_n) {
  CounterRng rng(seed, i);
  const std::int64_t N = rng.integer(1, max_n);
  const std::int64_t H = rng.integer(1, N);
  std::vector<Complex> v(static_cast<std::size_t>(N + H - 1));
  for (auto& z : v) z = disk_point(rng);
  return {N, H, SequenceWindow(1, std::move(v), 1.0)};
}

AssaniDraw assani_draw(std::uint64_t seed, std::uint64_t i, std::int64_t max_n) {
  CounterRng rng(seed, i);
  const std::int64_t N = rng.integer(1, max_n);
  SequenceWindow a = real_window(rng, 0, N);
  SequenceWindow b = real_window(rng, 0, N);
  SequenceWindow c = real_window(rng, 0, 2 * N - 1);
  return {N, std::move(a), std::move(b), std::move(c)};
}

CubicDraw cubic_draw(std::uint64_t seed, std::uint64_t i, int k, std::int64_t max_n) {
  CounterRng rng(seed, i);
  CubicDraw d;
  d.k = k;
  d.N = rng.integer(1, max_n);
  const std::size_t count = (std::size_t{1} << k) - 1;
  for (std::size_t j = 0; j < count; ++j) d.sequences.push_back(real_window(rng, 0, k * (d.N - 1) + 1));
  return d;
}

std::vector<Complex> battery_function(std::uint64_t seed, std::uint64_t i, std::int64_t p) {
  CounterRng rng(seed, i);
  std::vector<Complex> f(static_cast<std::size_t>(p));
  if (i % 8 == 7) {
    const std::int64_t xi = rng.integer(0, p - 1);
    for (std::int64_t n = 0; n < p; ++n) f[static_cast<std::size_t>(n)] = unit_phase(static_cast<double>((xi * n) % p) / static_cast<double>(p));
  } else if (i % 4 == 3) {
    for (auto& z : f) z = {rng.uniform(-1.0, 1.0), 0.0};
  } else {
    for (auto& z : f) z = disk_point(rng);
  }
  return f;
}

}  // namespace ergolab
