#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ergolab/numeric.hpp"

namespace ergolab {

/// A finite window [offset, offset + size) of a bounded two-sided sequence,
/// with a declared sup-bound that every stored value respects (within 1e-12).
class SequenceWindow {
 public:
  /// Throws ConfigError if values is empty or a value exceeds bound.
  SequenceWindow(std::int64_t offset, std::vector<Complex> values, double bound);

  /// Declared bound equal to the largest stored modulus.
  static SequenceWindow tight(std::int64_t offset, std::vector<Complex> values);

  std::int64_t offset() const { return offset_; }
  /// One past the last stored index.
  std::int64_t end() const { return offset_ + static_cast<std::int64_t>(values_.size()); }
  std::size_t size() const { return values_.size(); }
  double bound() const { return bound_; }
  const std::vector<Complex>& values() const { return values_; }

  bool covers(std::int64_t first, std::int64_t last) const { return first >= offset_ && last < end(); }

  /// Throws WindowError naming `what` unless [first, last] is stored.
  void require(std::int64_t first, std::int64_t last, std::string_view what) const;

  /// Unchecked access by absolute index.
  Complex operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - offset_)]; }

  /// Checked access by absolute index.
  Complex at(std::int64_t n) const;

  /// The stored values for indices [first, first + count); checked.
  std::span<const Complex> slice(std::int64_t first, std::size_t count) const;

  /// True when every imaginary part is within tol of zero.
  bool is_real(double tol = 1e-12) const;

 private:
  std::int64_t offset_;
  std::vector<Complex> values_;
  double bound_;
};

/// Cesaro values A_N along a schedule plus forward Cauchy tails:
/// cauchy_tail[j] = max_{i > j} |A_{N_i} - A_{N_j}|, and 0 at the last entry.
struct AverageSeries {
  std::vector<std::int64_t> schedule;
  std::vector<Complex> averages;
  std::vector<double> cauchy_tail;
  std::vector<std::string> warnings;

  Complex last() const { return averages.back(); }
};

/// Fills cauchy_tail from averages.
AverageSeries make_series(std::vector<std::int64_t> schedule, std::vector<Complex> averages);

/// Throws ConfigError unless the schedule is non-empty, positive and strictly increasing.
void validate_schedule(std::span<const std::int64_t> schedule);

/// Powers of two up to max_n, merged with multiples of period (when period > 0).
std::vector<std::int64_t> default_schedule(std::int64_t max_n, std::int64_t period = 0);

/// Averages (1/N) sum_{i<N} terms[i] for each scheduled N, pairwise summed.
AverageSeries prefix_averages(std::span<const Complex> terms, std::span<const std::int64_t> schedule);

}  // namespace ergolab
