#pragma once

// Independent reference implementations used only by the tests.  Each one
// follows the textbook definition directly (brute force, extended precision
// or plain counting) and shares no code path with the library kernel it
// checks.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Q = __float128;

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// {x} for a quad-precision x.
inline double frac_q(Q x) {
  Q f = x - static_cast<Q>(static_cast<std::int64_t>(x));
  if (f < 0) f += 1;
  if (f >= 1) f -= 1;
  return static_cast<double>(f);
}

inline C phase(double frac) { return std::polar(1.0, kTwoPi * frac); }

/// e(n^2 theta) with the product formed in quad precision.
inline C quadratic_phase(std::int64_t n, double theta) {
  return phase(frac_q(static_cast<Q>(n) * static_cast<Q>(n) * static_cast<Q>(theta)));
}

/// Heisenberg: M(x,y,z) as (x, y, z) with M(a)M(b) = (a1+b1, a2+b2, a3+b3+a1 b2).
struct Heis {
  Q x, y, z;
};

inline Heis mul(const Heis& a, const Heis& b) { return {a.x + b.x, a.y + b.y, a.z + b.z + a.x * b.y}; }

/// Normal form of the coset g Gamma in [0,1)^3 by right multiplication with lattice elements.
inline std::array<double, 3> reduce(const Heis& g) {
  const Q fy = static_cast<Q>(static_cast<std::int64_t>(g.y < 0 ? g.y - 1 : g.y));
  // right-multiply by (-[x], -[y], c): z' = z - x [y] + c
  const Q z = g.z - g.x * fy;
  return {frac_q(g.x), frac_q(g.y), frac_q(z)};
}

/// a^n x by n explicit matrix products.
inline std::array<double, 3> heisenberg_power(std::array<double, 3> a, std::array<double, 3> x, int n) {
  Heis g{x[0], x[1], x[2]};
  const Heis step{a[0], a[1], a[2]};
  for (int i = 0; i < n; ++i) g = mul(step, g);
  return reduce(g);
}

/// Circular distance on [0,1).
inline double circ(double a, double b) {
  const double d = std::fabs(a - b);
  return std::min(d, 1.0 - d);
}

/// sum_m c_m e(m t) by direct summation.
inline C trig_poly(const std::vector<C>& c, double t) {
  C s{0.0, 0.0};
  for (std::size_t m = 0; m < c.size(); ++m) s += c[m] * phase(std::fmod(static_cast<double>(m) * t, 1.0));
  return s;
}

/// max over a uniform grid of `points` values of |P(t)|.
inline double grid_sup(const std::vector<C>& c, int points) {
  double best = 0.0;
  for (int j = 0; j < points; ++j) best = std::max(best, std::abs(trig_poly(c, static_cast<double>(j) / points)));
  return best;
}

/// Normalized DFT on Z_p by direct summation.
inline std::vector<C> dft(const std::vector<C>& f) {
  const auto p = static_cast<std::int64_t>(f.size());
  std::vector<C> out(f.size());
  for (std::int64_t xi = 0; xi < p; ++xi) {
    C s{0.0, 0.0};
    for (std::int64_t n = 0; n < p; ++n) s += f[static_cast<std::size_t>(n)] * std::polar(1.0, -kTwoPi * static_cast<double>(xi * n % p) / static_cast<double>(p));
    out[static_cast<std::size_t>(xi)] = s / static_cast<double>(p);
  }
  return out;
}

/// (1/N^2) sum_{h1,h2 < N} a_{h1} b_{h2} c_{h1+h2}: the k = 2 cubic average, O(N^2).
inline C cubic2_naive(const std::vector<C>& a, const std::vector<C>& b, const std::vector<C>& c, std::int64_t N) {
  C s{0.0, 0.0};
  for (std::int64_t h1 = 0; h1 < N; ++h1) {
    for (std::int64_t h2 = 0; h2 < N; ++h2) {
      s += a[static_cast<std::size_t>(h1)] * b[static_cast<std::size_t>(h2)] * c[static_cast<std::size_t>(h1 + h2)];
    }
  }
  return s / static_cast<double>(N * N);
}

/// Permutation power by repeated application.
inline std::int64_t perm_power(const std::vector<std::int64_t>& t, std::int64_t x, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) x = t[static_cast<std::size_t>(x)];
  return x;
}

/// Order of a permutation by iterating the whole table until it returns to the identity.
inline std::int64_t perm_order(const std::vector<std::int64_t>& t) {
  std::vector<std::int64_t> cur = t;
  std::int64_t n = 1;
  for (;;) {
    bool id = true;
    for (std::size_t i = 0; i < cur.size(); ++i) id = id && cur[i] == static_cast<std::int64_t>(i);
    if (id) return n;
    for (auto& v : cur) v = t[static_cast<std::size_t>(v)];
    ++n;
  }
}

/// (1/P) sum_{n<P} mu(cap_i T^{-a_i n} A_i) counted by set intersection, with
/// the powers T^{a_i n} built up as composed tables; returns (count, p * P).
inline std::pair<std::uint64_t, std::uint64_t> joining_count(const std::vector<std::int64_t>& t,
                                                             const std::vector<std::int64_t>& a,
                                                             const std::vector<std::vector<bool>>& sets) {
  const auto p = static_cast<std::int64_t>(t.size());
  const std::int64_t P = perm_order(t);
  std::vector<std::vector<std::int64_t>> step(a.size()), power(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::int64_t x = 0; x < p; ++x) {
      step[i].push_back(perm_power(t, x, ((a[i] % P) + P) % P));
      power[i].push_back(x);
    }
  }
  std::uint64_t count = 0;
  for (std::int64_t n = 0; n < P; ++n) {
    // T^{-a_i n} A_i = {x : T^{a_i n} x in A_i}
    for (std::int64_t x = 0; x < p; ++x) {
      bool in = true;
      for (std::size_t i = 0; i < a.size(); ++i) in = in && sets[i][static_cast<std::size_t>(power[i][static_cast<std::size_t>(x)])];
      count += in ? 1 : 0;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (auto& v : power[i]) v = step[i][static_cast<std::size_t>(v)];
    }
  }
  return {count, static_cast<std::uint64_t>(p) * static_cast<std::uint64_t>(P)};
}

}  // namespace oracle
