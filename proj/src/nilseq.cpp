#include "ergolab/nilseq.hpp"

#include <algorithm>
#include <cmath>

#include "ergolab/dynsys.hpp"
#include "ergolab/errors.hpp"
#include "ergolab/parallel.hpp"

namespace ergolab {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw ConfigError(std::string(what) + " must be finite");
}

}  // namespace

WeightSpec WeightSpec::trig_phase(double t) {
  require_finite(t, "trig phase t");
  return WeightSpec(TrigPhase{mod1(t)}, 1, 1.0);
}

WeightSpec WeightSpec::poly_phase(double theta, int degree) {
  require_finite(theta, "poly phase theta");
  if (degree != 1 && degree != 2) throw ConfigError("poly phase degree must be 1 or 2");
  return WeightSpec(PolyPhase{mod1(theta), degree}, degree, 1.0);
}

WeightSpec WeightSpec::heisenberg_basic(std::array<double, 3> a, std::array<double, 3> x) {
  for (double v : a) require_finite(v, "Heisenberg element");
  for (double& v : x) {
    require_finite(v, "Heisenberg base point");
    v = mod1(v);
  }
  return WeightSpec(HeisenbergBasic{a, x}, 2, 1.0);
}

WeightSpec WeightSpec::product(std::vector<WeightSpec> factors) {
  if (factors.empty()) throw ConfigError("product weight needs at least one factor");
  int step = 1;
  double bound = 1.0;
  for (const WeightSpec& f : factors) {
    step = std::max(step, f.step_class());
    bound *= f.bound();
  }
  return WeightSpec(Product{std::move(factors)}, step, bound);
}

WeightSpec WeightSpec::shift(WeightSpec inner, std::int64_t m) {
  const int step = inner.step_class();
  const double bound = inner.bound();
  return WeightSpec(Shift{std::make_shared<const WeightSpec>(std::move(inner)), m}, step, bound);
}

WeightSpec WeightSpec::conjugate(WeightSpec inner) {
  const int step = inner.step_class();
  const double bound = inner.bound();
  return WeightSpec(Conjugate{std::make_shared<const WeightSpec>(std::move(inner))}, step, bound);
}

WeightSpec WeightSpec::constant(Complex c) {
  require_finite(c.real(), "constant weight");
  require_finite(c.imag(), "constant weight");
  return WeightSpec(Constant{c}, 1, std::abs(c));
}

Complex weight_at(const WeightSpec& w, std::int64_t n) {
  return std::visit(
      Overloaded{
          [n](const WeightSpec::TrigPhase& p) { return unit_phase(frac_mul(n, p.t)); },
          [n](const WeightSpec::PolyPhase& p) {
            if (p.degree == 1) return unit_phase(frac_mul(n, p.theta));
            // T^n(0,0) = (n theta, n^2 theta) for (x,y) -> (x + theta, y + 2x + theta).
            const StatePoint s = iterate(SystemSpec::skew_product(p.theta), StatePoint::coords({0.0, 0.0}), n);
            return unit_phase(s.coords()[1]);
          },
          [n](const WeightSpec::HeisenbergBasic& h) {
            const StatePoint s =
                iterate(SystemSpec::heisenberg(h.a), StatePoint::coords({h.x[0], h.x[1], h.x[2]}), n);
            return unit_phase(s.coords()[2]);
          },
          [n](const WeightSpec::Product& p) {
            Complex v{1.0, 0.0};
            for (const WeightSpec& f : p.factors) v *= weight_at(f, n);
            return v;
          },
          [n](const WeightSpec::Shift& s) { return weight_at(*s.inner, checked_add(n, s.m)); },
          [n](const WeightSpec::Conjugate& c) { return std::conj(weight_at(*c.inner, n)); },
          [](const WeightSpec::Constant& c) { return c.c; }},
      w.variant());
}

SequenceWindow weight_window(const WeightSpec& w, std::int64_t offset, std::int64_t N) {
  if (N < 1) throw ConfigError("weight_window needs N >= 1");
  checked_add(offset, N);
  std::vector<Complex> values(static_cast<std::size_t>(N));
  constexpr std::size_t kChunk = 4096;
  const std::size_t chunks = (values.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t hi = std::min(values.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < hi; ++i) values[i] = weight_at(w, offset + static_cast<std::int64_t>(i));
  });
  return SequenceWindow(offset, std::move(values), w.bound());
}

}  // namespace ergolab
