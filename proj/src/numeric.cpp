#include "ergolab/numeric.hpp"

#include <cmath>
#include <limits>

#include "ergolab/errors.hpp"

namespace ergolab {

namespace {

__extension__ typedef __int128 int128;

constexpr std::size_t kLeafSize = 16;

template <class T>
T tree_sum(std::span<const T> v) {
  if (v.size() <= kLeafSize) {
    T s{};
    for (const T& x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return tree_sum(v.first(half)) + tree_sum(v.subspan(half));
}

}  // namespace

double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;
  return r;
}

Complex unit_phase(double x) {
  const double r = mod1(x);
  const double q = r * 4.0;
  if (q == std::floor(q)) {
    switch (static_cast<int>(q)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double angle = 2.0 * kPi * r;
  return {std::cos(angle), std::sin(angle)};
}

ScaledPhase scaled_phase(std::int64_t n, double a) {
  if (!std::isfinite(a)) throw RangeError("scaled_phase: non-finite factor");
  if (n == 0 || a == 0.0) return {0, 0.0};

  // a = mant * 2^exp exactly, |mant| < 2^53.
  int e = 0;
  const double m = std::frexp(a, &e);
  const auto mant = static_cast<std::int64_t>(std::ldexp(m, 53));
  const int exp2 = e - 53;

  const int128 product = static_cast<int128>(n) * mant;  // |product| < 2^116
  constexpr int128 kMax = std::numeric_limits<std::int64_t>::max();
  constexpr int128 kMin = std::numeric_limits<std::int64_t>::min();

  if (exp2 >= 0) {
    // a is an integer; n*a has no fractional part.
    if (exp2 > 62) throw RangeError("scaled_phase: n*a exceeds 64-bit range");
    const int128 limit = kMax >> exp2;
    if (product > limit || product < -limit) throw RangeError("scaled_phase: n*a exceeds 64-bit range");
    return {static_cast<std::int64_t>(product * (int128{1} << exp2)), 0.0};
  }

  const int shift = -exp2;
  if (shift >= 120) {
    // |n*a| < 2^-4: only the sign decides the integer part.
    double f = std::ldexp(static_cast<double>(product), exp2);
    if (product < 0) {
      f += 1.0;
      if (f >= 1.0) return {0, 0.0};
      return {-1, f};
    }
    return {0, f};
  }

  int128 whole = product >> shift;  // arithmetic shift == floor division
  const int128 rem = product - whole * (int128{1} << shift);
  double f = std::ldexp(static_cast<double>(rem), exp2);
  if (f >= 1.0) {
    f = 0.0;
    whole += 1;
  }
  if (whole > kMax || whole < kMin) throw RangeError("scaled_phase: floor(n*a) exceeds 64-bit range");
  return {static_cast<std::int64_t>(whole), f};
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw RangeError("integer overflow in closed-form evaluation");
  return r;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw RangeError("integer overflow in closed-form evaluation");
  return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) return std::numeric_limits<std::uint64_t>::max();
  return r;
}

std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < exponent; ++i) {
    if (__builtin_mul_overflow(r, base, &r)) return std::numeric_limits<std::uint64_t>::max();
  }
  return r;
}

Complex pairwise_sum(std::span<const Complex> values) { return tree_sum(values); }
double pairwise_sum(std::span<const double> values) { return tree_sum(values); }

}  // namespace ergolab
