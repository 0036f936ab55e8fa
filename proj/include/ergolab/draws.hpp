#pragma once

// Seeded random inputs for the inequality batteries.  Draw i of a battery
// depends only on (seed, i), so batteries can be split or parallelized
// without changing any draw.

#include <cstdint>
#include <vector>

#include "ergolab/sequence.hpp"

namespace ergolab {

struct VdcDraw {
  std::int64_t N = 0;
  std::int64_t H = 0;
  SequenceWindow u;  // complex, |u| <= 1, indices 1 .. N+H-1
};

/// N uniform in [1, max_n], H uniform in [1, N].
VdcDraw vdc_draw(std::uint64_t seed, std::uint64_t i, std::int64_t max_n);

struct AssaniDraw {
  std::int64_t N = 0;
  SequenceWindow a;  // [0, N-1]
  SequenceWindow b;  // [0, N-1]
  SequenceWindow c;  // [0, 2(N-1)]
};

/// Real values uniform in [-1, 1]; N uniform in [1, max_n].
AssaniDraw assani_draw(std::uint64_t seed, std::uint64_t i, std::int64_t max_n);

struct CubicDraw {
  int k = 0;
  std::int64_t N = 0;
  std::vector<SequenceWindow> sequences;  // 2^k - 1 real windows over [0, k(N-1)]
};

/// Real values uniform in [-1, 1]; N uniform in [1, max_n].
CubicDraw cubic_draw(std::uint64_t seed, std::uint64_t i, int k, std::int64_t max_n);

/// Function i of the cyclic battery on Z_p: values uniform in the unit disk,
/// with every fourth function real and every eighth a pure character.
std::vector<Complex> battery_function(std::uint64_t seed, std::uint64_t i, std::int64_t p);

}  // namespace ergolab
