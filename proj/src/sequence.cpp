#include "ergolab/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

SequenceWindow::SequenceWindow(std::int64_t offset, std::vector<Complex> values, double bound)
    : offset_(offset), values_(std::move(values)), bound_(bound) {
  if (values_.empty()) throw ConfigError("sequence window must hold at least one value");
  if (!(bound_ >= 0.0) || !std::isfinite(bound_)) throw ConfigError("sequence window bound must be finite and >= 0");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double m = std::abs(values_[i]);
    if (!std::isfinite(m) || m > bound_ + 1e-12) {
      throw ConfigError("sequence value at index " + std::to_string(offset_ + static_cast<std::int64_t>(i)) +
                        " exceeds declared bound " + std::to_string(bound_));
    }
  }
}

SequenceWindow SequenceWindow::tight(std::int64_t offset, std::vector<Complex> values) {
  double bound = 0.0;
  for (const Complex& v : values) bound = std::max(bound, std::abs(v));
  return SequenceWindow(offset, std::move(values), bound);
}

void SequenceWindow::require(std::int64_t first, std::int64_t last, std::string_view what) const {
  if (!covers(first, last)) {
    throw WindowError(std::string(what) + ": needs indices [" + std::to_string(first) + ", " + std::to_string(last) +
                      "] but window holds [" + std::to_string(offset_) + ", " + std::to_string(end() - 1) + "]");
  }
}

Complex SequenceWindow::at(std::int64_t n) const {
  require(n, n, "sequence access");
  return (*this)[n];
}

std::span<const Complex> SequenceWindow::slice(std::int64_t first, std::size_t count) const {
  if (count == 0) return {};
  require(first, first + static_cast<std::int64_t>(count) - 1, "sequence slice");
  return std::span<const Complex>(values_).subspan(static_cast<std::size_t>(first - offset_), count);
}

bool SequenceWindow::is_real(double tol) const {
  return std::all_of(values_.begin(), values_.end(), [tol](const Complex& v) { return std::abs(v.imag()) <= tol; });
}

AverageSeries make_series(std::vector<std::int64_t> schedule, std::vector<Complex> averages) {
  AverageSeries s;
  s.schedule = std::move(schedule);
  s.averages = std::move(averages);
  const std::size_t n = s.averages.size();
  s.cauchy_tail.assign(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double worst = 0.0;
    for (std::size_t i = j + 1; i < n; ++i) worst = std::max(worst, std::abs(s.averages[i] - s.averages[j]));
    s.cauchy_tail[j] = worst;
  }
  return s;
}

void validate_schedule(std::span<const std::int64_t> schedule) {
  if (schedule.empty()) throw ConfigError("schedule must not be empty");
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    if (schedule[i] < 1) throw ConfigError("schedule entries must be >= 1");
    if (i > 0 && schedule[i] <= schedule[i - 1]) throw ConfigError("schedule must be strictly increasing");
  }
}

std::vector<std::int64_t> default_schedule(std::int64_t max_n, std::int64_t period) {
  if (max_n < 1) throw ConfigError("schedule maximum must be >= 1");
  std::set<std::int64_t> points;
  for (std::int64_t n = 1; n <= max_n; n *= 2) {
    points.insert(n);
    if (n > max_n / 2) break;
  }
  if (period > 0) {
    for (std::int64_t n = period; n <= max_n; n += period) points.insert(n);
  }
  return {points.begin(), points.end()};
}

AverageSeries prefix_averages(std::span<const Complex> terms, std::span<const std::int64_t> schedule) {
  validate_schedule(schedule);
  if (static_cast<std::size_t>(schedule.back()) > terms.size()) {
    throw WindowError("averaging needs " + std::to_string(schedule.back()) + " terms, have " +
                      std::to_string(terms.size()));
  }
  std::vector<Complex> averages(schedule.size());
  parallel_for(schedule.size(), [&](std::size_t j) {
    const auto n = static_cast<std::size_t>(schedule[j]);
    averages[j] = pairwise_sum(terms.first(n)) / static_cast<double>(n);
  });
  return make_series({schedule.begin(), schedule.end()}, std::move(averages));
}

}  // namespace ergolab
