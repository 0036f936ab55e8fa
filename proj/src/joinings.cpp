#include "ergolab/joinings.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"
#include "ergolab/uniformity.hpp"

namespace ergolab {

namespace {

void require_exponents(std::span<const std::int64_t> exponents) {
  if (exponents.empty()) throw ConfigError("joining needs at least one exponent");
  std::set<std::int64_t> seen;
  for (std::int64_t a : exponents) {
    if (a == 0) throw ConfigError("joining exponents must be nonzero");
    if (!seen.insert(a).second) throw ConfigError("joining exponent " + std::to_string(a) + " repeated");
  }
}

bool all_indicators(std::span<const Observable> obs) {
  return std::all_of(obs.begin(), obs.end(), [](const Observable& f) {
    return std::holds_alternative<Observable::Indicator>(f.variant());
  });
}

/// Integer ratio count / denom rounded once.  Both are below 2^53 here, so
/// the quotient of the exact doubles is the correctly rounded rational.
double exact_ratio(std::uint64_t count, std::uint64_t denom) {
  constexpr std::uint64_t kExact = std::uint64_t{1} << 53;
  if (count > kExact || denom > kExact) throw RangeError("joining count exceeds exact double range");
  return static_cast<double>(count) / static_cast<double>(denom);
}

/// x -> T^{a n} x on a permutation, with a n reduced per cycle.
std::int64_t step(const FinitePermutation& perm, std::int64_t x, std::int64_t a, std::int64_t n) {
  const std::int64_t len = perm.cycle_length(x);
  return perm.apply(x, ((a % len) * (n % len)) % len);
}

/// Number of n in [0, len) with T^{a_i n} x in A_i for every i.
std::uint64_t hits(const FinitePermutation& perm, std::int64_t x, std::span<const std::int64_t> exponents,
                   std::span<const Observable> obs, std::int64_t len) {
  std::uint64_t c = 0;
  for (std::int64_t n = 0; n < len; ++n) {
    bool in = true;
    for (std::size_t i = 0; in && i < exponents.size(); ++i) {
      const auto& members = std::get<Observable::Indicator>(obs[i].variant()).members;
      in = members[static_cast<std::size_t>(step(perm, x, exponents[i], n))];
    }
    c += in ? 1 : 0;
  }
  return c;
}

Complex product_at(const SystemSpec& sys, const FinitePermutation& perm, std::int64_t x,
                   std::span<const std::int64_t> exponents, std::span<const Observable> obs, std::int64_t n) {
  Complex v{1.0, 0.0};
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    v *= obs[i](sys, StatePoint::index(step(perm, x, exponents[i], n)));
  }
  return v;
}

JoiningEstimate exact_period(const SystemSpec& sys, const JoiningQuery& q) {
  const FinitePermutation& perm = sys.permutation();
  const std::int64_t p = perm.size();
  const std::int64_t period = perm.order();
  JoiningEstimate e;
  e.N = period;

  // Along the orbit of x the integrand has period cycle_length(x), which
  // divides the order, so one cycle per point suffices.
  if (all_indicators(q.observables)) {
    std::uint64_t count = 0;
    for (std::int64_t x = 0; x < p; ++x) {
      const std::int64_t len = perm.cycle_length(x);
      count += hits(perm, x, q.exponents, q.observables, len) * static_cast<std::uint64_t>(period / len);
    }
    e.value = exact_ratio(count, static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(period));
    return e;
  }
  std::vector<Complex> per_point(static_cast<std::size_t>(p));
  parallel_for(per_point.size(), [&](std::size_t i) {
    const auto x = static_cast<std::int64_t>(i);
    const std::int64_t len = perm.cycle_length(x);
    std::vector<Complex> terms(static_cast<std::size_t>(len));
    for (std::int64_t n = 0; n < len; ++n) {
      terms[static_cast<std::size_t>(n)] = product_at(sys, perm, x, q.exponents, q.observables, n);
    }
    per_point[i] = pairwise_sum(std::span<const Complex>(terms)) / static_cast<double>(len);
  });
  e.value = pairwise_sum(std::span<const Complex>(per_point)) / static_cast<double>(p);
  return e;
}

JoiningEstimate finite_cesaro(const SystemSpec& sys, const JoiningQuery& q, const Budget& budget) {
  const FinitePermutation& perm = sys.permutation();
  const std::int64_t p = perm.size();
  budget.require(saturating_mul(saturating_mul(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(q.N)),
                                q.exponents.size()),
                 "finite self-joining average");
  JoiningEstimate e;
  e.N = q.N;
  if (all_indicators(q.observables)) {
    std::uint64_t count = 0;
    for (std::int64_t x = 0; x < p; ++x) count += hits(perm, x, q.exponents, q.observables, q.N);
    e.value = exact_ratio(count, static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(q.N));
    return e;
  }
  const Complex total = blocked_sum<Complex>(static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(q.N),
                                             [&](std::uint64_t i) {
                                               const auto x = static_cast<std::int64_t>(i / q.N);
                                               const auto n = static_cast<std::int64_t>(i % q.N);
                                               return product_at(sys, perm, x, q.exponents, q.observables, n);
                                             });
  e.value = total / (static_cast<double>(p) * static_cast<double>(q.N));
  return e;
}

/// Sample mean and its standard error, pairwise summed in sample order.
std::pair<Complex, double> mean_and_error(const std::vector<Complex>& vals) {
  const double count = static_cast<double>(vals.size());
  const Complex mean = pairwise_sum(std::span<const Complex>(vals)) / count;
  if (vals.size() < 2) return {mean, 0.0};
  std::vector<double> dev(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) dev[i] = std::norm(vals[i] - mean);
  const double var = pairwise_sum(std::span<const double>(dev)) / (count - 1.0);
  return {mean, std::sqrt(var / count)};
}

JoiningEstimate monte_carlo(const SystemSpec& sys, const JoiningQuery& q, const Budget& budget) {
  budget.require(saturating_mul(saturating_mul(static_cast<std::uint64_t>(q.samples), static_cast<std::uint64_t>(q.N)),
                                q.exponents.size()),
                 "Monte Carlo self-joining average");
  std::vector<Complex> per_sample(static_cast<std::size_t>(q.samples));
  parallel_for(per_sample.size(), [&](std::size_t s) {
    CounterRng rng(q.seed, s);
    const StatePoint x = random_state(sys, rng);
    const SequenceWindow w = multilinear_orbit_window(sys, x, q.observables, q.exponents, 0, q.N);
    per_sample[s] = pairwise_sum(std::span<const Complex>(w.values())) / static_cast<double>(q.N);
  });
  const auto [mean, err] = mean_and_error(per_sample);
  JoiningEstimate e;
  e.value = mean;
  e.std_error = err;
  e.N = q.N;
  e.samples = q.samples;
  return e;
}

}  // namespace

void validate_query(const SystemSpec& sys, const JoiningQuery& q) {
  require_exponents(q.exponents);
  if (q.observables.size() != q.exponents.size()) {
    throw ConfigError("joining has " + std::to_string(q.exponents.size()) + " exponents but " +
                      std::to_string(q.observables.size()) + " sets");
  }
  for (const Observable& f : q.observables) f.validate_for(sys);
  switch (q.mode) {
    case JoiningMode::ExactPeriod:
      if (!sys.is_finite()) throw ConfigError("exact-period joining needs a finite permutation system");
      break;
    case JoiningMode::Finite:
      if (!sys.is_finite()) throw ConfigError("exact finite-N joining needs a finite permutation system");
      if (q.N < 1) throw ConfigError("joining length N must be >= 1");
      break;
    case JoiningMode::MonteCarlo:
      if (q.N < 1) throw ConfigError("joining length N must be >= 1");
      if (q.samples < 1) throw ConfigError("Monte Carlo joining needs samples >= 1");
      break;
  }
}

JoiningEstimate selfjoining_correlation(const SystemSpec& sys, const JoiningQuery& q, const Budget& budget) {
  validate_query(sys, q);
  switch (q.mode) {
    case JoiningMode::ExactPeriod:
      return exact_period(sys, q);
    case JoiningMode::Finite:
      return finite_cesaro(sys, q, budget);
    case JoiningMode::MonteCarlo:
      return monte_carlo(sys, q, budget);
  }
  throw ConfigError("unknown joining mode");
}

SequenceCorrelationReport sequence_correlation(const SequenceWindow& z, std::span<const std::int64_t> shifts,
                                               std::span<const std::int64_t> schedule) {
  if (shifts.empty()) throw ConfigError("sequence correlation needs at least one shift");
  validate_schedule(schedule);
  const auto [lo, hi] = std::minmax_element(shifts.begin(), shifts.end());
  const std::int64_t max_n = schedule.back();
  z.require(1 + *lo, max_n + *hi, "sequence correlation");

  std::vector<Complex> terms(static_cast<std::size_t>(max_n));
  for (std::int64_t n = 1; n <= max_n; ++n) {
    Complex v{1.0, 0.0};
    for (std::int64_t s : shifts) v *= z[n + s];
    terms[static_cast<std::size_t>(n - 1)] = v;
  }
  SequenceCorrelationReport r;
  r.shifts.assign(shifts.begin(), shifts.end());
  r.partial = prefix_averages(terms, schedule);
  r.value = r.partial.last();
  r.N = max_n;
  return r;
}

MultivariableEstimateReport multivariable_estimate_report(const SystemSpec& sys,
                                                          std::span<const Observable> observables,
                                                          std::span<const std::int64_t> exponents, std::int64_t N,
                                                          std::int64_t samples, std::uint64_t seed, int oversample,
                                                          const Budget& budget) {
  if (!sys.is_finite()) throw ConfigError("multivariable estimate needs a periodic (finite permutation) system");
  require_exponents(exponents);
  if (observables.size() != exponents.size()) {
    throw ConfigError("multivariable estimate has " + std::to_string(exponents.size()) + " exponents but " +
                      std::to_string(observables.size()) + " observables");
  }
  for (const Observable& f : observables) {
    f.validate_for(sys);
    if (f.sup_bound() > 1.0 + 1e-12) throw ConfigError("multivariable estimate needs observables bounded by 1");
  }
  if (samples < 0) throw ConfigError("samples must be >= 0");
  const FinitePermutation& perm = sys.permutation();
  const std::int64_t p = perm.size();
  const std::int64_t period = perm.order();
  if (N < 1 || N % period != 0) {
    throw ConfigError("multivariable estimate needs N to be a positive multiple of the period " +
                      std::to_string(period));
  }
  const int d = static_cast<int>(exponents.size());
  if (d + 3 > 6) throw ConfigError("multivariable estimate supports at most 3 observables");

  const bool exact = samples == 0;
  const std::uint64_t tuples =
      exact ? static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(period) : static_cast<std::uint64_t>(samples);
  budget.require(saturating_mul(saturating_mul(tuples, static_cast<std::uint64_t>(N)), exponents.size()),
                 "multivariable estimate");

  // Tuple j is (T^{a_1 m} x, ..., T^{a_d m} x); its weighted orbit at n is
  // prod_i f_i(T^{a_i (m + n)} x), n = 1 .. N.
  std::vector<double> maxima(tuples);
  parallel_for(maxima.size(), [&](std::size_t j) {
    std::int64_t x = 0;
    std::int64_t m = 0;
    if (exact) {
      x = static_cast<std::int64_t>(j) / period;
      m = static_cast<std::int64_t>(j) % period;
    } else {
      CounterRng rng(seed, j);
      x = rng.integer(0, p - 1);
      m = rng.integer(0, period - 1);
    }
    std::vector<Complex> c(static_cast<std::size_t>(N));
    for (std::int64_t n = 1; n <= N; ++n) {
      c[static_cast<std::size_t>(n - 1)] = product_at(sys, perm, x, exponents, observables, m + n);
    }
    maxima[j] = sup_trig(SequenceWindow(1, std::move(c), 1.0 + 1e-12), oversample, static_cast<double>(N)).grid_max;
  });

  MultivariableEstimateReport r;
  r.N = N;
  r.samples = static_cast<std::int64_t>(tuples);
  const double count = static_cast<double>(tuples);
  r.lhs_surrogate = pairwise_sum(std::span<const double>(maxima)) / count;
  if (!exact && tuples > 1) {
    std::vector<double> dev(maxima.size());
    for (std::size_t i = 0; i < maxima.size(); ++i) dev[i] = (maxima[i] - r.lhs_surrogate) * (maxima[i] - r.lhs_surrogate);
    r.std_error = std::sqrt(pairwise_sum(std::span<const double>(dev)) / (count - 1.0) / count);
  }

  for (const Observable& f : observables) {
    r.seminorms.push_back(hk_seminorm_estimate(sys, std::nullopt, f, d + 3, period, period, budget));
  }
  r.min_seminorm = *std::min_element(r.seminorms.begin(), r.seminorms.end());
  if (r.min_seminorm > 0.0) {
    r.ratio = r.lhs_surrogate / r.min_seminorm;
  } else {
    r.ratio = r.lhs_surrogate > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  return r;
}

}  // namespace ergolab
