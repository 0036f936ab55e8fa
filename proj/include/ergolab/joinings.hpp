#pragma once

// Furstenberg self-joining correlations and Furstenberg-system correlations
// of bounded sequences.
//
// Exact joinings exist only for periodic (finite permutation) systems, where
// the Cesaro limit equals the one-period average.  Other systems go through
// Monte Carlo over the invariant measure with a reported standard error.
// Furstenberg systems of sequences are represented only by their correlation
// values, never as measures on the shift space.

#include <cstdint>
#include <span>
#include <vector>

#include "ergolab/averaging.hpp"
#include "ergolab/budget.hpp"
#include "ergolab/dynsys.hpp"

namespace ergolab {

enum class JoiningMode {
  ExactPeriod,  // (1/P) sum_{n<P} integral, P the permutation order; finite systems
  Finite,       // (1/N) sum_{n<N} integral, exact integral over a finite system
  MonteCarlo,   // (1/N) sum_{n<N} averaged over sampled initial points
};

struct JoiningQuery {
  std::vector<std::int64_t> exponents;  // distinct, nonzero
  std::vector<Observable> observables;  // one per exponent (indicators for sets)
  JoiningMode mode = JoiningMode::ExactPeriod;
  std::int64_t N = 0;          // Finite and MonteCarlo
  std::int64_t samples = 0;    // MonteCarlo
  std::uint64_t seed = 0;      // MonteCarlo
};

struct JoiningEstimate {
  Complex value;
  double std_error = 0.0;  // 0 for exact modes
  std::int64_t N = 0;      // number of n averaged
  std::int64_t samples = 0;
};

/// Throws ConfigError on length mismatch, empty query, repeated or zero
/// exponents, or an exact mode on a non-finite system.
void validate_query(const SystemSpec& sys, const JoiningQuery& q);

/// mu_d^A evaluated on the product of the observables (sets, for indicators).
/// When every observable is an indicator, the exact modes count
/// intersections in integers and divide once, so the result is the correctly
/// rounded rational.
JoiningEstimate selfjoining_correlation(const SystemSpec& sys, const JoiningQuery& q,
                                        const Budget& budget = default_budget());

struct SequenceCorrelationReport {
  std::vector<std::int64_t> shifts;
  Complex value;  // at the last scheduled N
  std::int64_t N = 0;
  AverageSeries partial;  // (1/N) sum_{n=1}^N prod_j z_{n+n_j} along the schedule
};

SequenceCorrelationReport sequence_correlation(const SequenceWindow& z, std::span<const std::int64_t> shifts,
                                               std::span<const std::int64_t> schedule);

struct MultivariableEstimateReport {
  double lhs_surrogate = 0.0;  // mean grid max, a lower bound for the sup over t
  double min_seminorm = 0.0;
  std::vector<double> seminorms;  // |||f_i|||_{d+3} at period scales
  double ratio = 0.0;             // lhs / min seminorm; 0 when the lhs vanishes
  std::int64_t N = 0;
  std::int64_t samples = 0;  // tuples averaged
  double std_error = 0.0;    // 0 under exact enumeration
};

/// Finite-scale surrogate of the joining-averaged sup over t of
/// |(1/N) sum_{n=1}^N e(nt) prod_i f_i(T^{a_i n} x_i)| against min_i |||f_i|||_{d+3}.
/// Joining-distributed tuples (T^{a_1 m} x, ..., T^{a_d m} x) with x uniform
/// and m uniform in [0, P) are enumerated exactly when samples == 0 and drawn
/// with `seed` otherwise.  N must be a positive multiple of the period P.
MultivariableEstimateReport multivariable_estimate_report(const SystemSpec& sys,
                                                          std::span<const Observable> observables,
                                                          std::span<const std::int64_t> exponents, std::int64_t N,
                                                          std::int64_t samples, std::uint64_t seed,
                                                          int oversample = 8, const Budget& budget = default_budget());

}  // namespace ergolab
