#pragma once

// Cubic averages, Gowers-Host-Kra uniformity quantities and the exact
// finite-N inequality checkers built on them.
//
// Two norm variants live here: the cyclic Gowers norm (exact algebra on Z_p,
// used as an oracle) and the windowed local seminorm built from finite-N
// correlations.  Finite surrogates always carry both the averaging length N
// and the cube range H; correlations use N independently of H.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ergolab/averaging.hpp"
#include "ergolab/budget.hpp"
#include "ergolab/dynsys.hpp"
#include "ergolab/sequence.hpp"

namespace ergolab {

/// Combinatorics of V_k = {0,1}^k.  A vertex is stored as a bitmask whose
/// bit i-1 is the coordinate eps_i, so the index map
/// phi(eps) = sum_i eps_i 2^{i-1} is the mask itself.
class CubeSpec {
 public:
  using Vertex = std::uint32_t;

  /// ConfigError unless 1 <= k <= 16.
  explicit CubeSpec(int k);

  int k() const { return k_; }
  std::size_t vertex_count() const { return std::size_t{1} << k_; }

  /// V_k in increasing mask order (the zero vertex first).
  std::vector<Vertex> vertices() const;
  /// V_k^* = V_k without the zero vertex.
  std::vector<Vertex> star() const;

  static int phi(Vertex eps) { return static_cast<int>(eps); }
  /// eps_i for 1 <= i <= k.
  static bool coordinate(Vertex eps, int i) { return (eps >> (i - 1)) & 1u; }
  /// |eps| = number of ones.
  static int weight(Vertex eps) { return __builtin_popcount(eps); }
  /// eps . h = sum_i eps_i h_i.
  static std::int64_t dot(Vertex eps, std::span<const std::int64_t> h);

  /// V*_{k,i} = {eps in V_k^*: eps_i = 0}.
  std::vector<Vertex> face(int i) const;
  /// A_i^j = V*_{k,i} \ V*_{k,j}, for i != j.
  std::vector<Vertex> difference_set(int i, int j) const;

 private:
  int k_;
};

enum class CubicMethod { Auto, Direct, Convolution };

/// C(N; a_1, ..., a_{2^k-1}) = (1/N^k) sum_{h in [N]^k} prod_{eps in V_k^*} a_{phi(eps), eps.h}.
/// sequences[j-1] holds a_j and must cover [0, |eps|(N-1)] for eps = phi^{-1}(j).
/// For k = 2 the convolution path computes (1/N^2) sum_n a_n sum_m b_m c_{n+m}
/// in O(N log N); Auto picks it when N >= 32.
Complex cubic_average(const CubeSpec& spec, std::int64_t N, std::span<const SequenceWindow> sequences,
                      CubicMethod method = CubicMethod::Auto, const Budget& budget = default_budget());

struct AssaniReport {
  double lhs_sq = 0.0;      // |(1/N^2) sum a_n b_m c_{n+m}|^2
  double mid_sq = 0.0;      // (1/N) sum_n |(1/N) sum_m b_m c_{n+m}|^2
  double rhs_sup_sq = 0.0;  // certified upper bound of sup_t |(1/N) sum_{m<=2(N-1)} e(mt) c_m|^2
  SupBound sup;
  bool holds = false;
};

/// Real windows bounded by one; a, b cover [0, N-1] and c covers [0, 2(N-1)].
AssaniReport assani_check(std::int64_t N, const SequenceWindow& a, const SequenceWindow& b, const SequenceWindow& c,
                          int oversample = 8);

struct CubicEstimateReport {
  double lhs_sq = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// The sequence h_k -> prod_{eps in A^k_{k-1}} a_{phi(eps), h_k + sum_{i<=k-2} eps_i h_i},
/// h_k in [0, N), for fixed prefix (h_1, ..., h_{k-2}).
SequenceWindow cubic_estimate_inner(const CubeSpec& spec, std::int64_t N, std::span<const SequenceWindow> sequences,
                                    std::span<const std::int64_t> prefix);

/// |C|^2 against (2/N^k) sum_{h_1..h_{k-2}} (certified sup_t |sum_{h_k} e(h_k t) inner(h_k)|)^2.
/// Requires k in {3, 4} and real windows bounded by one.
CubicEstimateReport cubic_estimate_check(const CubeSpec& spec, std::int64_t N,
                                         std::span<const SequenceWindow> sequences, int oversample = 8,
                                         const Budget& budget = default_budget());

/// (1/N) sum_{n=0}^{N-1} prod_{eps in V_k} C^{|eps|} a_{n + h.eps}, C = complex conjugation.
Complex local_correlation(const SequenceWindow& a, int k, std::span<const std::int64_t> h, std::int64_t N);

/// Finite-N correlations c_h for h in [H]^k, stored in lexicographic order
/// (h_1 slowest).
struct CorrelationTable {
  int k = 0;
  std::int64_t H = 0;
  std::int64_t source_n = 0;
  std::vector<Complex> entries;

  /// The h-tuple of entries[index].
  std::vector<std::int64_t> tuple(std::size_t index) const;
};

CorrelationTable correlation_table(const SequenceWindow& a, int k, std::int64_t H, std::int64_t N,
                                   const Budget& budget = default_budget());

struct LocalSeminormReport {
  double value = 0.0;  // clamped mean raised to 1/2^k
  double mean = 0.0;   // (1/H^k) sum_h Re c_h before clamping
  bool clamped = false;
  int k = 0;
  std::int64_t H = 0;
  std::int64_t N = 0;
};

/// ((1/H^k) sum_{h in [H]^k} Re c_h(N))^{1/2^k}; negative means clamp to 0 and set `clamped`.
LocalSeminormReport local_seminorm(const SequenceWindow& a, int k, std::int64_t H, std::int64_t N,
                                   const Budget& budget = default_budget());

/// ((1/p^{k+1}) sum_{n, h in Z_p^k} prod_{eps in V_k} C^{|eps|} f(n + h.eps mod p))^{1/2^k}.
double gowers_norm_cyclic(std::span<const Complex> f, int k, const Budget& budget = default_budget());

/// nullopt selects the integrated estimate (finite systems only).
using HkBasePoint = std::optional<StatePoint>;

/// Finite-(H,N) estimate of |||f|||_k^{2^k} via the recursion
/// |||f|||_{k+1}^{2^{k+1}} = lim_H (1/H) sum_{h<H} |||f . T^h conj(f)|||_k^{2^k}
/// with base |||g|||_1^2 = |(1/N) sum_{n<N} g(T^n x)|^2 (averaged over x when integrating).
double hk_seminorm_power(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, int k, std::int64_t H,
                         std::int64_t N, const Budget& budget = default_budget());

/// hk_seminorm_power^{1/2^k}.  Requires 1 <= k <= 6 (cost H^{k-1} N per point).
double hk_seminorm_estimate(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, int k, std::int64_t H,
                            std::int64_t N, const Budget& budget = default_budget());

struct HkVdcReport {
  double lhs = 0.0;  // (1/H) sum_{h<H} |||f . T^{ah} f|||_k^{2^k}
  double rhs = 0.0;  // |a| |||f|||_{k+1}^{2^{k+1}}
  double ratio = 0.0;
};

/// Finite-scale diagnostic only; f must be real.
HkVdcReport hk_vdc_bound_report(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, std::int64_t a,
                                int k, std::int64_t H, std::int64_t N, const Budget& budget = default_budget());

}  // namespace ergolab
