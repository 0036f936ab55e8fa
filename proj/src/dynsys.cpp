#include "ergolab/dynsys.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

__extension__ typedef __int128 int128;

constexpr std::int64_t kQuadraticLimit = std::int64_t{1} << 31;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_quadratic_range(std::int64_t n) {
  if (n > kQuadraticLimit || n < -kQuadraticLimit) {
    throw RangeError("iterate: |n| = " + std::to_string(n) + " exceeds 2^31 for a quadratic closed form");
  }
}

std::vector<double> reduced(std::vector<double> v) {
  for (double& x : v) {
    if (!std::isfinite(x)) throw ConfigError("coordinates must be finite");
    x = mod1(x);
  }
  return v;
}

StatePoint iterate_heisenberg(const HeisenbergTranslation& h, const std::vector<double>& p, std::int64_t n) {
  require_quadratic_range(n);
  const auto [alpha, beta, gamma] = h.a;
  const double x = p[0], y = p[1], z = p[2];

  // a^n = M(n alpha, n beta, n gamma + C(n,2) alpha beta); a^n M(x,y,z) =
  // M(x + n alpha, y + n beta, z + n gamma + C(n,2) alpha beta + n alpha y),
  // then right-multiplied by a lattice element to land in [0,1)^3.
  const std::int64_t pairs = n * (n - 1) / 2;
  const ScaledPhase na = scaled_phase(n, alpha);
  const ScaledPhase nb = scaled_phase(n, beta);

  const double x_new = mod1(x + na.frac);
  const double y_shift = y + nb.frac;
  const double y_floor = std::floor(y_shift);
  const std::int64_t lattice_y = checked_add(nb.whole, static_cast<std::int64_t>(y_floor));
  const double y_new = mod1(y_shift - y_floor);

  const double t_gamma = frac_mul(n, gamma);
  const ScaledPhase ca = scaled_phase(pairs, alpha);
  const double t_pairs = ca.frac * beta + frac_mul(ca.whole, beta);
  const double t_cross = na.frac * y + frac_mul(na.whole, y);
  const double t_lattice = frac_mul(lattice_y, x) + frac_mul(checked_mul(n, lattice_y), alpha);

  const double z_new = mod1(mod1(z + t_gamma) + mod1(t_pairs) + mod1(t_cross) - mod1(t_lattice));
  return StatePoint::coords({x_new, y_new, z_new});
}

}  // namespace

// ---------------------------------------------------------------------------
// FinitePermutation

FinitePermutation::FinitePermutation(std::vector<std::int64_t> table) : table_(std::move(table)) {
  const auto p = static_cast<std::int64_t>(table_.size());
  if (p < 1) throw ConfigError("permutation table must be non-empty");
  std::vector<bool> hit(table_.size(), false);
  for (std::int64_t v : table_) {
    if (v < 0 || v >= p) throw ConfigError("permutation entry " + std::to_string(v) + " out of range");
    if (hit[static_cast<std::size_t>(v)]) throw ConfigError("permutation table is not a bijection");
    hit[static_cast<std::size_t>(v)] = true;
  }

  cycle_of_.assign(table_.size(), 0);
  position_.assign(table_.size(), -1);
  for (std::int64_t start = 0; start < p; ++start) {
    if (position_[static_cast<std::size_t>(start)] >= 0) continue;
    std::vector<std::int64_t> cycle;
    std::int64_t cur = start;
    do {
      position_[static_cast<std::size_t>(cur)] = static_cast<std::int64_t>(cycle.size());
      cycle_of_[static_cast<std::size_t>(cur)] = cycles_.size();
      cycle.push_back(cur);
      cur = table_[static_cast<std::size_t>(cur)];
    } while (cur != start);
    cycles_.push_back(std::move(cycle));
  }
}

std::int64_t FinitePermutation::apply(std::int64_t x, std::int64_t n) const {
  const auto& cycle = cycles_[cycle_of_[static_cast<std::size_t>(x)]];
  const auto len = static_cast<std::int64_t>(cycle.size());
  std::int64_t pos = (position_[static_cast<std::size_t>(x)] + n % len) % len;
  if (pos < 0) pos += len;
  return cycle[static_cast<std::size_t>(pos)];
}

std::int64_t FinitePermutation::cycle_length(std::int64_t x) const {
  return static_cast<std::int64_t>(cycles_[cycle_of_[static_cast<std::size_t>(x)]].size());
}

std::int64_t FinitePermutation::order() const {
  std::int64_t l = 1;
  for (const auto& c : cycles_) {
    const auto len = static_cast<std::int64_t>(c.size());
    l = checked_mul(l / std::gcd(l, len), len);
  }
  return l;
}

// ---------------------------------------------------------------------------
// SystemSpec

SystemSpec SystemSpec::finite_permutation(std::vector<std::int64_t> table) {
  return SystemSpec(FinitePermutation(std::move(table)));
}

SystemSpec SystemSpec::torus_rotation(std::vector<double> alpha) {
  if (alpha.empty()) throw ConfigError("torus rotation needs dimension >= 1");
  return SystemSpec(TorusRotation{reduced(std::move(alpha))});
}

SystemSpec SystemSpec::skew_product(double alpha) {
  if (!std::isfinite(alpha)) throw ConfigError("skew product alpha must be finite");
  return SystemSpec(SkewProduct{mod1(alpha)});
}

SystemSpec SystemSpec::heisenberg(std::array<double, 3> a) {
  for (double v : a) {
    if (!std::isfinite(v)) throw ConfigError("Heisenberg group element must be finite");
  }
  return SystemSpec(HeisenbergTranslation{a});
}

const FinitePermutation& SystemSpec::permutation() const {
  if (const auto* p = std::get_if<FinitePermutation>(&v_)) return *p;
  throw ConfigError("system is not a finite permutation");
}

std::size_t SystemSpec::dimension() const {
  return std::visit(Overloaded{[](const FinitePermutation&) -> std::size_t { return 0; },
                               [](const TorusRotation& t) -> std::size_t { return t.alpha.size(); },
                               [](const SkewProduct&) -> std::size_t { return 2; },
                               [](const HeisenbergTranslation&) -> std::size_t { return 3; }},
                    v_);
}

std::int64_t SystemSpec::state_count() const {
  if (const auto* p = std::get_if<FinitePermutation>(&v_)) return p->size();
  return 0;
}

// ---------------------------------------------------------------------------
// StatePoint

StatePoint StatePoint::coords(std::vector<double> x) { return StatePoint(reduced(std::move(x))); }

std::int64_t StatePoint::index() const {
  if (const auto* i = std::get_if<std::int64_t>(&v_)) return *i;
  throw ConfigError("state is not a finite index");
}

const std::vector<double>& StatePoint::coords() const {
  if (const auto* c = std::get_if<std::vector<double>>(&v_)) return *c;
  throw ConfigError("state is not a coordinate vector");
}

void validate_state(const SystemSpec& sys, const StatePoint& x) {
  if (sys.is_finite()) {
    if (!x.is_index()) throw ConfigError("finite system needs an integer state");
    if (x.index() < 0 || x.index() >= sys.state_count()) {
      throw ConfigError("state " + std::to_string(x.index()) + " outside {0, ..., " +
                        std::to_string(sys.state_count() - 1) + "}");
    }
    return;
  }
  if (x.is_index()) throw ConfigError("continuous system needs a coordinate state");
  if (x.coords().size() != sys.dimension()) {
    throw ConfigError("state has dimension " + std::to_string(x.coords().size()) + ", system needs " +
                      std::to_string(sys.dimension()));
  }
}

StatePoint random_state(const SystemSpec& sys, CounterRng& rng) {
  if (sys.is_finite()) return StatePoint::index(rng.integer(0, sys.state_count() - 1));
  std::vector<double> c(sys.dimension());
  for (double& v : c) v = rng.uniform();
  return StatePoint::coords(std::move(c));
}

StatePoint iterate(const SystemSpec& sys, const StatePoint& x, std::int64_t n) {
  return std::visit(
      Overloaded{
          [&](const FinitePermutation& p) { return StatePoint::index(p.apply(x.index(), n)); },
          [&](const TorusRotation& t) {
            std::vector<double> c = x.coords();
            for (std::size_t i = 0; i < c.size(); ++i) c[i] = mod1(c[i] + frac_mul(n, t.alpha[i]));
            return StatePoint::coords(std::move(c));
          },
          [&](const SkewProduct& s) {
            require_quadratic_range(n);
            const auto& c = x.coords();
            const double xn = mod1(c[0] + frac_mul(n, s.alpha));
            const double yn = mod1(c[1] + frac_mul(checked_mul(2, n), c[0]) + frac_mul(n * n, s.alpha));
            return StatePoint::coords({xn, yn});
          },
          [&](const HeisenbergTranslation& h) { return iterate_heisenberg(h, x.coords(), n); }},
      sys.variant());
}

// ---------------------------------------------------------------------------
// Observable

Observable Observable::character(std::vector<std::int64_t> m) {
  if (m.empty()) throw ConfigError("character frequency vector must be non-empty");
  return Observable(Character{std::move(m)}, 1.0);
}

Observable Observable::indicator(std::vector<bool> members) {
  if (members.empty()) throw ConfigError("indicator needs a non-empty state space");
  return Observable(Indicator{std::move(members)}, 1.0);
}

Observable Observable::indicator_of(std::int64_t p, const std::vector<std::int64_t>& subset) {
  if (p < 1) throw ConfigError("indicator needs p >= 1");
  std::vector<bool> members(static_cast<std::size_t>(p), false);
  for (std::int64_t s : subset) {
    if (s < 0 || s >= p) throw ConfigError("indicator member " + std::to_string(s) + " out of range");
    members[static_cast<std::size_t>(s)] = true;
  }
  return indicator(std::move(members));
}

Observable Observable::table(std::vector<Complex> values) {
  if (values.empty()) throw ConfigError("observable table must be non-empty");
  double bound = 0.0;
  for (const Complex& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw ConfigError("observable table must be finite");
    bound = std::max(bound, std::abs(v));
  }
  return Observable(Table{std::move(values)}, bound);
}

Observable Observable::heisenberg_vertical() { return Observable(HeisenbergVertical{}, 1.0); }

bool Observable::is_real() const {
  return std::visit(Overloaded{[](const Character& c) {
                                 return std::all_of(c.m.begin(), c.m.end(), [](std::int64_t v) { return v == 0; });
                               },
                               [](const Indicator&) { return true; },
                               [](const Table& t) {
                                 return std::all_of(t.values.begin(), t.values.end(),
                                                    [](const Complex& v) { return v.imag() == 0.0; });
                               },
                               [](const HeisenbergVertical&) { return false; }},
                    v_);
}

void Observable::validate_for(const SystemSpec& sys) const {
  const std::int64_t p = sys.state_count();
  std::visit(Overloaded{[&](const Character& c) {
                          const std::size_t dim = sys.is_finite() ? 1 : sys.dimension();
                          if (c.m.size() != dim) {
                            throw ConfigError("character has " + std::to_string(c.m.size()) +
                                              " frequencies, system needs " + std::to_string(dim));
                          }
                        },
                        [&](const Indicator& s) {
                          if (!sys.is_finite() || static_cast<std::int64_t>(s.members.size()) != p) {
                            throw ConfigError("indicator must match the finite state space size");
                          }
                        },
                        [&](const Table& t) {
                          if (!sys.is_finite() || static_cast<std::int64_t>(t.values.size()) != p) {
                            throw ConfigError("table length " + std::to_string(t.values.size()) +
                                              " must equal the number of states " + std::to_string(p));
                          }
                        },
                        [&](const HeisenbergVertical&) {
                          if (!std::holds_alternative<HeisenbergTranslation>(sys.variant())) {
                            throw ConfigError("vertical character needs a Heisenberg system");
                          }
                        }},
             v_);
}

Complex Observable::operator()(const SystemSpec& sys, const StatePoint& x) const {
  return std::visit(
      Overloaded{[&](const Character& c) -> Complex {
                   if (sys.is_finite()) {
                     const std::int64_t p = sys.state_count();
                     const int128 r = ((static_cast<int128>(c.m[0]) % p) * x.index()) % p;
                     const auto rr = static_cast<std::int64_t>(r < 0 ? r + p : r);
                     return unit_phase(static_cast<double>(rr) / static_cast<double>(p));
                   }
                   const auto& coords = x.coords();
                   double phase = 0.0;
                   for (std::size_t i = 0; i < coords.size(); ++i) phase += frac_mul(c.m[i], coords[i]);
                   return unit_phase(phase);
                 },
                 [&](const Indicator& s) -> Complex {
                   return s.members[static_cast<std::size_t>(x.index())] ? 1.0 : 0.0;
                 },
                 [&](const Table& t) -> Complex { return t.values[static_cast<std::size_t>(x.index())]; },
                 [&](const HeisenbergVertical&) -> Complex { return unit_phase(x.coords()[2]); }},
      v_);
}

// ---------------------------------------------------------------------------
// PolynomialIterate

PolynomialIterate::PolynomialIterate(std::vector<std::int64_t> coefficients) : coeffs_(std::move(coefficients)) {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  if (coeffs_.size() < 2) throw ConfigError("polynomial iterate must be non-constant");
}

std::int64_t PolynomialIterate::operator()(std::int64_t n) const {
  std::int64_t acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = checked_add(checked_mul(acc, n), *it);
  return acc;
}

// ---------------------------------------------------------------------------
// Orbit sampling

namespace {

constexpr std::size_t kChunk = 4096;

template <class Time>
SequenceWindow sample_orbit(const SystemSpec& sys, const StatePoint& x, const Observable& obs, std::int64_t first,
                            std::int64_t count, Time&& time) {
  if (count < 1) throw ConfigError("orbit sample count must be >= 1");
  validate_state(sys, x);
  obs.validate_for(sys);
  std::vector<Complex> values(static_cast<std::size_t>(count));
  const std::size_t chunks = (values.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t lo = c * kChunk;
    const std::size_t hi = std::min(values.size(), lo + kChunk);
    for (std::size_t i = lo; i < hi; ++i) {
      const std::int64_t n = first + static_cast<std::int64_t>(i);
      values[i] = obs(sys, iterate(sys, x, time(n)));
    }
  });
  return SequenceWindow(first, std::move(values), obs.sup_bound());
}

}  // namespace

SequenceWindow orbit_window(const SystemSpec& sys, const StatePoint& x, const Observable& obs, std::int64_t exponent,
                            std::int64_t first, std::int64_t count) {
  return sample_orbit(sys, x, obs, first, count, [exponent](std::int64_t n) { return checked_mul(exponent, n); });
}

SequenceWindow orbit_samples(const SystemSpec& sys, const StatePoint& x, const Observable& obs,
                             std::int64_t exponent, std::int64_t N) {
  if (N < 1) throw ConfigError("orbit_samples needs N >= 1");
  return orbit_window(sys, x, obs, exponent, 0, N);
}

SequenceWindow polynomial_orbit_samples(const SystemSpec& sys, const StatePoint& x, const Observable& obs,
                                        const PolynomialIterate& p, std::int64_t N) {
  if (N < 1) throw ConfigError("polynomial_orbit_samples needs N >= 1");
  return sample_orbit(sys, x, obs, 0, N, [&p](std::int64_t n) { return p(n); });
}

}  // namespace ergolab
