#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace ergolab {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Inequality verdicts accept lhs <= rhs + |rhs| * kRelTol + kAbsTol.
inline constexpr double kRelTol = 1e-9;
inline constexpr double kAbsTol = 1e-12;

inline bool within_tolerance(double lhs, double rhs) {
  return lhs <= rhs + (rhs < 0 ? -rhs : rhs) * kRelTol + kAbsTol;
}

/// Reduce to [0,1); exact integers (and values rounding up to 1) map to 0.
double mod1(double v);

/// e(x) = exp(2 pi i x), with x reduced mod 1 first.  Quarter turns are exact.
Complex unit_phase(double x);

/// Integer and fractional part of n*a computed from the exact binary
/// expansion of a; the fraction is rounded once at the end.
struct ScaledPhase {
  std::int64_t whole;  // floor(n * a)
  double frac;         // n * a - whole, in [0,1)
};

/// Throws RangeError when floor(n*a) does not fit in 64 bits.
ScaledPhase scaled_phase(std::int64_t n, double a);

/// {n * a}, exact up to a single final rounding.
inline double frac_mul(std::int64_t n, double a) { return scaled_phase(n, a).frac; }

/// Checked 64-bit arithmetic; RangeError on overflow.
std::int64_t checked_mul(std::int64_t a, std::int64_t b);
std::int64_t checked_add(std::int64_t a, std::int64_t b);
/// a*b, saturating at UINT64_MAX (used for budget arithmetic).
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);
/// base^exponent, saturating at UINT64_MAX (used for budget arithmetic).
std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent);

/// Fixed-order pairwise (tree) summation.
Complex pairwise_sum(std::span<const Complex> values);
double pairwise_sum(std::span<const double> values);

}  // namespace ergolab
