#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergolab/dynsys.hpp"
#include "ergolab/nilseq.hpp"
#include "ergolab/sequence.hpp"

namespace ergolab {

/// n -> prod_j f_j(T^{a_j n} x) for n in [first, first + count); the bound is
/// the product of the observables' bounds.
SequenceWindow multilinear_orbit_window(const SystemSpec& sys, const StatePoint& x,
                                        std::span<const Observable> observables,
                                        std::span<const std::int64_t> exponents, std::int64_t first,
                                        std::int64_t count);

/// A_N = (1/N) sum_{n=0}^{N-1} b_n prod_j f_j(T^{a_j n} x) for each scheduled N.
///
/// Repeated or zero exponents are allowed but recorded in `warnings`.
AverageSeries multilinear_average(const SystemSpec& sys, const StatePoint& x, std::span<const Observable> observables,
                                  std::span<const std::int64_t> exponents, const std::optional<WeightSpec>& weight,
                                  std::span<const std::int64_t> schedule);

/// (1/N) sum_{n=0}^{N-1} a_n b_n for each scheduled N.
AverageSeries weighted_average_of_window(const SequenceWindow& a, const SequenceWindow& b,
                                         std::span<const std::int64_t> schedule);

/// Grid maximum of |P(t)| / normalizer, P(t) = sum_m c_m e(m t) with m counted
/// from the start of the window, plus a certified upper bound for the sup over
/// the whole circle.
struct SupBound {
  double grid_max = 0.0;
  double certified_upper = 0.0;
  double argmax_t = 0.0;
  std::int64_t grid_size = 0;
};

/// Evaluates P on M = oversample * L points by a zero-padded DFT.  Since
/// |P'| <= 2 pi (L-1) sup|P| and every t is within 1/(2M) of the grid,
/// sup|P| <= grid_max / (1 - pi (L-1) / M).  Throws ConfigError when
/// M <= pi (L-1) or normalizer <= 0.
SupBound sup_trig(const SequenceWindow& c, int oversample = 8, double normalizer = 1.0);

struct VanDerCorputReport {
  double lhs = 0.0;
  double rhs = 0.0;  // inner correlation sums run over n = 1 .. N
  bool holds = false;
  double rhs_classical = 0.0;  // inner sums run over n = 1 .. N-h
  bool holds_classical = false;
};

/// H^2 |sum_{n=1}^N u_n|^2 against
/// H(N+H-1) sum_{n=1}^N |u_n|^2 + 2(N+H-1) sum_{h=1}^{H-1} (H-h) Re sum_{n=1}^N u_n conj(u_{n+h}).
/// The window must cover indices 1 .. N+H-1; requires 1 <= H <= N.
///
/// With the inner sums running to N this is not a theorem: terms u_{n+h}
/// with n+h > N enter only the right side, and random windows with H near N
/// violate it.  The classical statement (u supported on [1, N], inner sums
/// to N-h) always holds and is reported alongside.
VanDerCorputReport van_der_corput_check(const SequenceWindow& u, std::int64_t N, std::int64_t H);

}  // namespace ergolab
