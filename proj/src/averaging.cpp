#include "ergolab/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"
#include "fft.hpp"

namespace ergolab {

SequenceWindow multilinear_orbit_window(const SystemSpec& sys, const StatePoint& x,
                                        std::span<const Observable> observables,
                                        std::span<const std::int64_t> exponents, std::int64_t first,
                                        std::int64_t count) {
  if (observables.empty()) throw ConfigError("multilinear average needs at least one observable");
  if (observables.size() != exponents.size()) {
    throw ConfigError("observables and exponents differ in length (" + std::to_string(observables.size()) + " vs " +
                      std::to_string(exponents.size()) + ")");
  }
  std::vector<Complex> values(static_cast<std::size_t>(count), Complex{1.0, 0.0});
  double bound = 1.0;
  for (std::size_t j = 0; j < observables.size(); ++j) {
    const SequenceWindow f = orbit_window(sys, x, observables[j], exponents[j], first, count);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] *= f.values()[i];
    bound *= f.bound();
  }
  return SequenceWindow(first, std::move(values), bound);
}

AverageSeries multilinear_average(const SystemSpec& sys, const StatePoint& x, std::span<const Observable> observables,
                                  std::span<const std::int64_t> exponents, const std::optional<WeightSpec>& weight,
                                  std::span<const std::int64_t> schedule) {
  validate_schedule(schedule);
  const std::int64_t max_n = schedule.back();
  SequenceWindow terms = multilinear_orbit_window(sys, x, observables, exponents, 0, max_n);

  std::vector<std::string> warnings;
  std::set<std::int64_t> seen;
  for (std::int64_t a : exponents) {
    if (a == 0) warnings.push_back("exponent 0 makes a factor constant in n");
    if (!seen.insert(a).second) warnings.push_back("exponent " + std::to_string(a) + " repeated");
  }

  AverageSeries series;
  if (weight) {
    const SequenceWindow b = weight_window(*weight, 0, max_n);
    series = weighted_average_of_window(terms, b, schedule);
  } else {
    series = prefix_averages(terms.values(), schedule);
  }
  series.warnings = std::move(warnings);
  return series;
}

AverageSeries weighted_average_of_window(const SequenceWindow& a, const SequenceWindow& b,
                                         std::span<const std::int64_t> schedule) {
  validate_schedule(schedule);
  const std::int64_t max_n = schedule.back();
  a.require(0, max_n - 1, "weighted average (a)");
  b.require(0, max_n - 1, "weighted average (b)");
  std::vector<Complex> terms(static_cast<std::size_t>(max_n));
  for (std::int64_t n = 0; n < max_n; ++n) terms[static_cast<std::size_t>(n)] = a[n] * b[n];
  return prefix_averages(terms, schedule);
}

SupBound sup_trig(const SequenceWindow& c, int oversample, double normalizer) {
  if (oversample < 4) throw ConfigError("sup_trig oversample must be >= 4");
  if (!(normalizer > 0.0) || !std::isfinite(normalizer)) throw ConfigError("sup_trig normalizer must be > 0");
  const std::size_t length = c.size();
  const std::size_t grid = length * static_cast<std::size_t>(oversample);
  const double degree = static_cast<double>(length - 1);
  const double slack = kPi * degree / static_cast<double>(grid);
  if (slack >= 1.0) {
    throw ConfigError("sup_trig grid of " + std::to_string(grid) + " points does not exceed pi*(L-1) = " +
                      std::to_string(kPi * degree));
  }

  const std::vector<Complex> values = detail::trig_grid(c.values(), grid);
  std::size_t best = 0;
  double best_abs = -1.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double m = std::abs(values[j]);
    if (m > best_abs) {
      best_abs = m;
      best = j;
    }
  }

  SupBound s;
  s.grid_max = best_abs / normalizer;
  s.certified_upper = s.grid_max / (1.0 - slack);
  s.argmax_t = static_cast<double>(best) / static_cast<double>(grid);
  s.grid_size = static_cast<std::int64_t>(grid);
  return s;
}

VanDerCorputReport van_der_corput_check(const SequenceWindow& u, std::int64_t N, std::int64_t H) {
  if (N < 1 || H < 1 || H > N) throw ConfigError("van der Corput check needs 1 <= H <= N");
  u.require(1, N + H - 1, "van der Corput check");

  const auto head = u.slice(1, static_cast<std::size_t>(N));
  const Complex total = pairwise_sum(head);
  std::vector<double> squares(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) squares[i] = std::norm(head[i]);
  const double energy = pairwise_sum(std::span<const double>(squares));

  // Weighted autocorrelations (H-h) Re sum_n u_n conj(u_{n+h}), h = 1 .. H-1.
  // The classical sums stop at n = N-h; the tail n > N-h is kept apart.
  std::vector<double> weighted(static_cast<std::size_t>(H - 1), 0.0);
  std::vector<double> weighted_tail(weighted.size(), 0.0);
  parallel_for(weighted.size(), [&](std::size_t idx) {
    const std::int64_t h = static_cast<std::int64_t>(idx) + 1;
    const auto shifted = u.slice(1 + h, static_cast<std::size_t>(N));
    const auto inner = static_cast<std::size_t>(N - h);
    std::vector<Complex> prods(head.size());
    for (std::size_t i = 0; i < head.size(); ++i) prods[i] = head[i] * std::conj(shifted[i]);
    const std::span<const Complex> all(prods);
    weighted[idx] = static_cast<double>(H - h) * pairwise_sum(all.first(inner)).real();
    weighted_tail[idx] = static_cast<double>(H - h) * pairwise_sum(all.subspan(inner)).real();
  });
  const double correlations = pairwise_sum(std::span<const double>(weighted));
  const double tails = pairwise_sum(std::span<const double>(weighted_tail));

  const double hd = static_cast<double>(H);
  const double span = static_cast<double>(N + H - 1);
  VanDerCorputReport r;
  r.lhs = hd * hd * std::norm(total);
  r.rhs = hd * span * energy + 2.0 * span * (correlations + tails);
  r.holds = within_tolerance(r.lhs, r.rhs);
  r.rhs_classical = hd * span * energy + 2.0 * span * correlations;
  r.holds_classical = within_tolerance(r.lhs, r.rhs_classical);
  return r;
}

}  // namespace ergolab
