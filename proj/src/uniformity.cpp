#include "ergolab/uniformity.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"
#include "fft.hpp"

namespace ergolab {

namespace {

constexpr std::int64_t kDirectCorrelationBelow = 32;

/// Digits of `index` in base `radix`, most significant first.
void decode(std::uint64_t index, std::uint64_t radix, std::span<std::int64_t> digits) {
  for (std::size_t i = digits.size(); i-- > 0;) {
    digits[i] = static_cast<std::int64_t>(index % radix);
    index /= radix;
  }
}

void require_sequence_count(const CubeSpec& spec, std::span<const SequenceWindow> sequences) {
  const std::size_t want = spec.vertex_count() - 1;
  if (sequences.size() != want) {
    throw ConfigError("cubic average with k = " + std::to_string(spec.k()) + " needs " + std::to_string(want) +
                      " sequences, got " + std::to_string(sequences.size()));
  }
}

void require_real_unit(const SequenceWindow& w, const std::string& what) {
  if (w.bound() > 1.0 + 1e-12) throw ConfigError(what + ": sequence bound " + std::to_string(w.bound()) + " exceeds 1");
  if (!w.is_real()) throw ConfigError(what + ": sequence must be real-valued");
}

/// row[n] = sum_{m<N} b_m c_{n+m}, n in [0, N).
std::vector<Complex> correlation_row(const SequenceWindow& b, const SequenceWindow& c, std::int64_t N) {
  const auto bs = b.slice(0, static_cast<std::size_t>(N));
  const auto cs = c.slice(0, static_cast<std::size_t>(2 * N - 1));
  if (N >= kDirectCorrelationBelow) return detail::correlate(bs, cs, static_cast<std::size_t>(N));
  std::vector<Complex> row(static_cast<std::size_t>(N));
  std::vector<Complex> prods(static_cast<std::size_t>(N));
  for (std::size_t n = 0; n < row.size(); ++n) {
    for (std::size_t m = 0; m < prods.size(); ++m) prods[m] = bs[m] * cs[n + m];
    row[n] = pairwise_sum(std::span<const Complex>(prods));
  }
  return row;
}

Complex conj_pow(Complex v, int times) { return (times & 1) ? std::conj(v) : v; }

/// Range of h.eps over eps in V_k: [sum of negative h_i, sum of positive h_i].
std::pair<std::int64_t, std::int64_t> cube_offsets(std::span<const std::int64_t> h) {
  std::int64_t lo = 0, hi = 0;
  for (std::int64_t v : h) (v < 0 ? lo : hi) += v;
  return {lo, hi};
}

/// (1/H^{k-1}) sum_{h in [H]^{k-1}} |local correlation of order k-1|^2; for
/// k = 1 this is |(1/N) sum_{n<N} a_n|^2.
double cube_power(const SequenceWindow& a, int k, std::int64_t H, std::int64_t N) {
  if (k == 1) {
    return std::norm(pairwise_sum(a.slice(0, static_cast<std::size_t>(N))) / static_cast<double>(N));
  }
  const int order = k - 1;
  const std::uint64_t count = saturating_pow(static_cast<std::uint64_t>(H), static_cast<unsigned>(order));
  std::vector<double> powers(count);
  parallel_for(count, [&](std::size_t idx) {
    std::vector<std::int64_t> h(static_cast<std::size_t>(order));
    decode(idx, static_cast<std::uint64_t>(H), h);
    powers[idx] = std::norm(local_correlation(a, order, h, N));
  });
  return pairwise_sum(std::span<const double>(powers)) / static_cast<double>(count);
}

void require_hk_args(int k, std::int64_t H, std::int64_t N) {
  if (k < 1 || k > 6) throw ConfigError("Host-Kra recursion depth k must be in [1, 6]");
  if (H < 1 || N < 1) throw ConfigError("Host-Kra estimate needs H >= 1 and N >= 1");
}

std::vector<StatePoint> base_points(const SystemSpec& sys, const HkBasePoint& x) {
  if (x) {
    validate_state(sys, *x);
    return {*x};
  }
  if (!sys.is_finite()) throw ConfigError("integrated Host-Kra estimate needs a finite system");
  std::vector<StatePoint> pts;
  for (std::int64_t i = 0; i < sys.state_count(); ++i) pts.push_back(StatePoint::index(i));
  return pts;
}

/// Averages per_point(x) over the base points, pairwise.
template <class F>
double average_over(const std::vector<StatePoint>& pts, F&& per_point) {
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t i) { vals[i] = per_point(pts[i]); });
  return pairwise_sum(std::span<const double>(vals)) / static_cast<double>(pts.size());
}

}  // namespace

// ---------------------------------------------------------------------------
// CubeSpec

CubeSpec::CubeSpec(int k) : k_(k) {
  if (k < 1 || k > 16) throw ConfigError("cube dimension k must be in [1, 16]");
}

std::vector<CubeSpec::Vertex> CubeSpec::vertices() const {
  std::vector<Vertex> v(vertex_count());
  for (Vertex e = 0; e < v.size(); ++e) v[e] = e;
  return v;
}

std::vector<CubeSpec::Vertex> CubeSpec::star() const {
  std::vector<Vertex> v;
  for (Vertex e = 1; e < vertex_count(); ++e) v.push_back(e);
  return v;
}

std::int64_t CubeSpec::dot(Vertex eps, std::span<const std::int64_t> h) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if ((eps >> i) & 1u) s += h[i];
  }
  return s;
}

std::vector<CubeSpec::Vertex> CubeSpec::face(int i) const {
  if (i < 1 || i > k_) throw ConfigError("face index out of range");
  std::vector<Vertex> v;
  for (Vertex e = 1; e < vertex_count(); ++e) {
    if (!coordinate(e, i)) v.push_back(e);
  }
  return v;
}

std::vector<CubeSpec::Vertex> CubeSpec::difference_set(int i, int j) const {
  if (i == j || j < 1 || j > k_) throw ConfigError("difference set needs distinct indices in [1, k]");
  const auto fi = face(i);
  std::vector<Vertex> v;
  for (Vertex e : fi) {
    if (coordinate(e, j)) v.push_back(e);  // eps not in V*_{k,j}
  }
  return v;
}

// ---------------------------------------------------------------------------
// Cubic averages

Complex cubic_average(const CubeSpec& spec, std::int64_t N, std::span<const SequenceWindow> sequences,
                      CubicMethod method, const Budget& budget) {
  if (N < 1) throw ConfigError("cubic average needs N >= 1");
  require_sequence_count(spec, sequences);
  for (CubeSpec::Vertex e : spec.star()) {
    sequences[e - 1].require(0, CubeSpec::weight(e) * (N - 1),
                             "cubic average sequence " + std::to_string(CubeSpec::phi(e)));
  }
  const int k = spec.k();
  const std::uint64_t terms = saturating_pow(static_cast<std::uint64_t>(N), static_cast<unsigned>(k));
  const double norm = std::pow(static_cast<double>(N), k);

  const bool use_convolution =
      k == 2 && (method == CubicMethod::Convolution || (method == CubicMethod::Auto && N >= kDirectCorrelationBelow));
  if (method == CubicMethod::Convolution && k != 2) throw ConfigError("convolution path exists only for k = 2");

  if (use_convolution) {
    const std::vector<Complex> row = correlation_row(sequences[1], sequences[2], N);
    const auto a = sequences[0].slice(0, static_cast<std::size_t>(N));
    std::vector<Complex> prods(row.size());
    for (std::size_t n = 0; n < row.size(); ++n) prods[n] = a[n] * row[n];
    return pairwise_sum(std::span<const Complex>(prods)) / norm;
  }

  budget.require(terms, "cubic average");
  const auto star = spec.star();
  const Complex total = blocked_sum<Complex>(terms, [&](std::uint64_t idx) {
    std::int64_t h[16];
    decode(idx, static_cast<std::uint64_t>(N), std::span<std::int64_t>(h, static_cast<std::size_t>(k)));
    Complex prod{1.0, 0.0};
    for (CubeSpec::Vertex e : star) {
      prod *= sequences[e - 1][CubeSpec::dot(e, std::span<const std::int64_t>(h, static_cast<std::size_t>(k)))];
    }
    return prod;
  });
  return total / norm;
}

AssaniReport assani_check(std::int64_t N, const SequenceWindow& a, const SequenceWindow& b, const SequenceWindow& c,
                          int oversample) {
  if (N < 1) throw ConfigError("Assani check needs N >= 1");
  require_real_unit(a, "Assani check (a)");
  require_real_unit(b, "Assani check (b)");
  require_real_unit(c, "Assani check (c)");
  a.require(0, N - 1, "Assani check (a)");
  b.require(0, N - 1, "Assani check (b)");
  c.require(0, 2 * (N - 1), "Assani check (c)");

  const double nd = static_cast<double>(N);
  const std::vector<Complex> row = correlation_row(b, c, N);
  const auto as = a.slice(0, static_cast<std::size_t>(N));
  std::vector<Complex> weighted(row.size());
  std::vector<double> squares(row.size());
  for (std::size_t n = 0; n < row.size(); ++n) {
    weighted[n] = as[n] * row[n];
    squares[n] = std::norm(row[n] / nd);
  }

  AssaniReport r;
  r.lhs_sq = std::norm(pairwise_sum(std::span<const Complex>(weighted)) / (nd * nd));
  r.mid_sq = pairwise_sum(std::span<const double>(squares)) / nd;
  const auto head = c.slice(0, static_cast<std::size_t>(2 * N - 1));
  r.sup = sup_trig(SequenceWindow(0, {head.begin(), head.end()}, c.bound()), oversample, nd);
  r.rhs_sup_sq = r.sup.certified_upper * r.sup.certified_upper;
  r.holds = within_tolerance(r.lhs_sq, r.mid_sq) && within_tolerance(r.mid_sq, r.rhs_sup_sq);
  return r;
}

SequenceWindow cubic_estimate_inner(const CubeSpec& spec, std::int64_t N, std::span<const SequenceWindow> sequences,
                                    std::span<const std::int64_t> prefix) {
  const int k = spec.k();
  if (k < 3) throw ConfigError("cubic estimate needs k > 2");
  require_sequence_count(spec, sequences);
  if (prefix.size() != static_cast<std::size_t>(k - 2)) throw ConfigError("inner sequence prefix must have k-2 entries");

  const auto set = spec.difference_set(k - 1, k);
  double bound = 1.0;
  for (CubeSpec::Vertex e : set) {
    const std::int64_t base = CubeSpec::dot(e, prefix);
    sequences[e - 1].require(base, base + N - 1, "cubic estimate sequence " + std::to_string(CubeSpec::phi(e)));
    bound *= sequences[e - 1].bound();
  }
  std::vector<Complex> values(static_cast<std::size_t>(N), Complex{1.0, 0.0});
  for (CubeSpec::Vertex e : set) {
    const std::int64_t base = CubeSpec::dot(e, prefix);
    for (std::int64_t hk = 0; hk < N; ++hk) values[static_cast<std::size_t>(hk)] *= sequences[e - 1][base + hk];
  }
  return SequenceWindow(0, std::move(values), bound);
}

CubicEstimateReport cubic_estimate_check(const CubeSpec& spec, std::int64_t N,
                                         std::span<const SequenceWindow> sequences, int oversample,
                                         const Budget& budget) {
  const int k = spec.k();
  if (k != 3 && k != 4) throw ConfigError("cubic estimate check supports k in {3, 4}");
  require_sequence_count(spec, sequences);
  for (std::size_t j = 0; j < sequences.size(); ++j) {
    require_real_unit(sequences[j], "cubic estimate sequence " + std::to_string(j + 1));
  }

  CubicEstimateReport r;
  r.lhs_sq = std::norm(cubic_average(spec, N, sequences, CubicMethod::Direct, budget));

  const std::uint64_t prefixes = saturating_pow(static_cast<std::uint64_t>(N), static_cast<unsigned>(k - 2));
  std::vector<double> sups(prefixes);
  parallel_for(prefixes, [&](std::size_t idx) {
    std::vector<std::int64_t> prefix(static_cast<std::size_t>(k - 2));
    decode(idx, static_cast<std::uint64_t>(N), prefix);
    const SupBound s = sup_trig(cubic_estimate_inner(spec, N, sequences, prefix), oversample, 1.0);
    sups[idx] = s.certified_upper * s.certified_upper;
  });
  r.rhs = 2.0 / std::pow(static_cast<double>(N), k) * pairwise_sum(std::span<const double>(sups));
  r.holds = within_tolerance(r.lhs_sq, r.rhs);
  return r;
}

// ---------------------------------------------------------------------------
// Local correlations and seminorms

Complex local_correlation(const SequenceWindow& a, int k, std::span<const std::int64_t> h, std::int64_t N) {
  if (k < 1 || k > 16) throw ConfigError("local correlation order k must be in [1, 16]");
  if (h.size() != static_cast<std::size_t>(k)) throw ConfigError("shift tuple must have k entries");
  if (N < 1) throw ConfigError("local correlation needs N >= 1");
  const auto [lo, hi] = cube_offsets(h);
  a.require(lo, N - 1 + hi, "local correlation");

  const std::size_t vertices = std::size_t{1} << k;
  std::vector<std::int64_t> offsets(vertices);
  std::vector<int> weights(vertices);
  for (CubeSpec::Vertex e = 0; e < vertices; ++e) {
    offsets[e] = CubeSpec::dot(e, h);
    weights[e] = CubeSpec::weight(e);
  }
  const Complex total = blocked_sum<Complex>(static_cast<std::uint64_t>(N), [&](std::uint64_t n) {
    Complex prod{1.0, 0.0};
    for (std::size_t e = 0; e < vertices; ++e) {
      prod *= conj_pow(a[static_cast<std::int64_t>(n) + offsets[e]], weights[e]);
    }
    return prod;
  });
  return total / static_cast<double>(N);
}

std::vector<std::int64_t> CorrelationTable::tuple(std::size_t index) const {
  std::vector<std::int64_t> h(static_cast<std::size_t>(k));
  decode(index, static_cast<std::uint64_t>(H), h);
  return h;
}

CorrelationTable correlation_table(const SequenceWindow& a, int k, std::int64_t H, std::int64_t N,
                                   const Budget& budget) {
  if (k < 1 || k > 16) throw ConfigError("correlation order k must be in [1, 16]");
  if (H < 1 || N < 1) throw ConfigError("correlation table needs H >= 1 and N >= 1");
  const std::uint64_t count = saturating_pow(static_cast<std::uint64_t>(H), static_cast<unsigned>(k));
  budget.require(saturating_mul(count, static_cast<std::uint64_t>(N)), "correlation table");
  a.require(0, N - 1 + k * (H - 1), "correlation table");

  CorrelationTable t;
  t.k = k;
  t.H = H;
  t.source_n = N;
  t.entries.resize(count);
  parallel_for(count, [&](std::size_t idx) { t.entries[idx] = local_correlation(a, k, t.tuple(idx), N); });
  return t;
}

LocalSeminormReport local_seminorm(const SequenceWindow& a, int k, std::int64_t H, std::int64_t N,
                                   const Budget& budget) {
  const CorrelationTable t = correlation_table(a, k, H, N, budget);
  std::vector<double> re(t.entries.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = t.entries[i].real();

  LocalSeminormReport r;
  r.k = k;
  r.H = H;
  r.N = N;
  r.mean = pairwise_sum(std::span<const double>(re)) / static_cast<double>(re.size());
  r.clamped = r.mean < 0.0;
  r.value = r.clamped ? 0.0 : std::pow(r.mean, 1.0 / static_cast<double>(std::uint64_t{1} << k));
  return r;
}

// ---------------------------------------------------------------------------
// Cyclic Gowers norms

double gowers_norm_cyclic(std::span<const Complex> f, int k, const Budget& budget) {
  if (f.empty()) throw ConfigError("Gowers norm needs p >= 1");
  if (k < 1 || k > 16) throw ConfigError("Gowers norm order k must be in [1, 16]");
  const auto p = static_cast<std::uint64_t>(f.size());
  const std::uint64_t terms = saturating_pow(p, static_cast<unsigned>(k + 1));
  budget.require(terms, "cyclic Gowers norm");

  // Summing over h_k first turns the cube sum into
  // (1/p^{k-1}) sum_{h'} |(1/p) sum_n prod_{eps' in V_{k-1}} C^{|eps'|} f(n + h'.eps')|^2,
  // a sum of nonnegative terms; the 2^k-th root of a signed sum would turn
  // roundoff near zero into errors of order 1e-16^{1/2^k}.
  const int order = k - 1;
  const std::size_t vertices = std::size_t{1} << order;
  const auto pi = static_cast<std::int64_t>(p);
  const std::uint64_t outer = saturating_pow(p, static_cast<unsigned>(order));
  const double total = blocked_sum<double>(outer, [&](std::uint64_t idx) {
    std::int64_t digits[16];
    const std::span<std::int64_t> h(digits, static_cast<std::size_t>(order));
    decode(idx, p, h);
    std::vector<Complex> g(static_cast<std::size_t>(p));
    for (std::int64_t n = 0; n < pi; ++n) {
      Complex prod{1.0, 0.0};
      for (CubeSpec::Vertex e = 0; e < vertices; ++e) {
        const std::int64_t at = (n + CubeSpec::dot(e, h)) % pi;
        prod *= conj_pow(f[static_cast<std::size_t>(at)], CubeSpec::weight(e));
      }
      g[static_cast<std::size_t>(n)] = prod;
    }
    return std::norm(pairwise_sum(std::span<const Complex>(g)) / static_cast<double>(p));
  });
  const double mean = total / static_cast<double>(outer);
  return std::pow(std::max(mean, 0.0), 1.0 / static_cast<double>(std::uint64_t{1} << k));
}

// ---------------------------------------------------------------------------
// Host-Kra recursion

double hk_seminorm_power(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, int k, std::int64_t H,
                         std::int64_t N, const Budget& budget) {
  require_hk_args(k, H, N);
  f.validate_for(sys);
  const std::vector<StatePoint> pts = base_points(sys, x);
  const std::uint64_t cubes = saturating_pow(static_cast<std::uint64_t>(H), static_cast<unsigned>(k - 1));
  budget.require(saturating_mul(saturating_mul(cubes, static_cast<std::uint64_t>(N)), pts.size()),
                 "Host-Kra estimate");

  const std::int64_t length = N + (k - 1) * (H - 1);
  return average_over(pts, [&](const StatePoint& pt) {
    return cube_power(orbit_window(sys, pt, f, 1, 0, length), k, H, N);
  });
}

double hk_seminorm_estimate(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, int k, std::int64_t H,
                            std::int64_t N, const Budget& budget) {
  const double power = hk_seminorm_power(sys, x, f, k, H, N, budget);
  return std::pow(power, 1.0 / static_cast<double>(std::uint64_t{1} << k));
}

HkVdcReport hk_vdc_bound_report(const SystemSpec& sys, const HkBasePoint& x, const Observable& f, std::int64_t a,
                                int k, std::int64_t H, std::int64_t N, const Budget& budget) {
  require_hk_args(k, H, N);
  if (k + 1 > 6) throw ConfigError("Host-Kra bound report needs k <= 5");
  if (a == 0) throw ConfigError("Host-Kra bound report needs a nonzero multiplier");
  f.validate_for(sys);
  if (!f.is_real()) throw ConfigError("Host-Kra bound report needs a real observable");
  const std::vector<StatePoint> pts = base_points(sys, x);
  const std::uint64_t cubes = saturating_pow(static_cast<std::uint64_t>(H), static_cast<unsigned>(k));
  budget.require(saturating_mul(saturating_mul(cubes, static_cast<std::uint64_t>(N)), 2 * pts.size()),
                 "Host-Kra bound report");

  const std::int64_t length = N + (k - 1) * (H - 1);
  const std::int64_t reach = checked_mul(a, H - 1);
  const std::int64_t first = std::min<std::int64_t>(0, reach);
  const std::int64_t last = length - 1 + std::max<std::int64_t>(0, reach);

  HkVdcReport r;
  r.lhs = average_over(pts, [&](const StatePoint& pt) {
    const SequenceWindow orbit = orbit_window(sys, pt, f, 1, first, last - first + 1);
    std::vector<double> per_h(static_cast<std::size_t>(H));
    for (std::int64_t h = 0; h < H; ++h) {
      std::vector<Complex> g(static_cast<std::size_t>(length));
      for (std::int64_t n = 0; n < length; ++n) g[static_cast<std::size_t>(n)] = orbit[n] * orbit[n + a * h];
      per_h[static_cast<std::size_t>(h)] = cube_power(SequenceWindow::tight(0, std::move(g)), k, H, N);
    }
    return pairwise_sum(std::span<const double>(per_h)) / static_cast<double>(H);
  });
  r.rhs = static_cast<double>(a < 0 ? -a : a) * hk_seminorm_power(sys, x, f, k + 1, H, N, budget);
  r.ratio = r.rhs > 0.0 ? r.lhs / r.rhs : (r.lhs > 0.0 ? INFINITY : 0.0);
  return r;
}

}  // namespace ergolab
