#pragma once

// Concrete measure-preserving systems with closed-form iterates.
//
// Every shipped variant has zero entropy (permutations, rotations, the skew
// product and nilrotations), so the zero-entropy hypothesis of the
// polynomial averages holds by construction; nothing is checked at runtime.
// Rational rotations are allowed: they are periodic rather than ergodic, and
// callers must not assume ergodicity.

#include <array>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "ergolab/numeric.hpp"
#include "ergolab/rng.hpp"
#include "ergolab/sequence.hpp"

namespace ergolab {

/// Bijection of {0, ..., p-1} with uniform measure; iterates use cycle arithmetic.
class FinitePermutation {
 public:
  /// Throws ConfigError unless table is a bijection of {0, ..., p-1}, p >= 1.
  explicit FinitePermutation(std::vector<std::int64_t> table);

  std::int64_t size() const { return static_cast<std::int64_t>(table_.size()); }
  const std::vector<std::int64_t>& table() const { return table_; }

  /// T^n x for any signed n.
  std::int64_t apply(std::int64_t x, std::int64_t n) const;

  std::int64_t cycle_length(std::int64_t x) const;

  /// Least common multiple of the cycle lengths; RangeError if it overflows.
  std::int64_t order() const;

 private:
  std::vector<std::int64_t> table_;
  std::vector<std::vector<std::int64_t>> cycles_;
  std::vector<std::size_t> cycle_of_;
  std::vector<std::int64_t> position_;
};

/// x -> x + alpha on T^m, Haar measure.
struct TorusRotation {
  std::vector<double> alpha;  // reduced to [0,1)
};

/// (x, y) -> (x + alpha, y + 2x + alpha) on T^2, Haar measure.
struct SkewProduct {
  double alpha;  // reduced to [0,1)
};

/// Left translation by a = M(alpha, beta, gamma) on H(R)/H(Z), where
/// M(x, y, z) is the upper unitriangular matrix with entries x, y on the
/// superdiagonal and z in the corner.  Points are stored in the normal form
/// (x, y, z) in [0,1)^3 of the lattice coset.  The group element itself is
/// not reduced: translations by a and a*gamma differ.
struct HeisenbergTranslation {
  std::array<double, 3> a;
};

class SystemSpec {
 public:
  using Variant = std::variant<FinitePermutation, TorusRotation, SkewProduct, HeisenbergTranslation>;

  static SystemSpec finite_permutation(std::vector<std::int64_t> table);
  static SystemSpec torus_rotation(std::vector<double> alpha);
  static SystemSpec skew_product(double alpha);
  static SystemSpec heisenberg(std::array<double, 3> a);

  const Variant& variant() const { return v_; }
  bool is_finite() const { return std::holds_alternative<FinitePermutation>(v_); }
  const FinitePermutation& permutation() const;

  /// Number of real coordinates of a state (0 for finite systems).
  std::size_t dimension() const;

  /// Number of states of a finite system; 0 otherwise.
  std::int64_t state_count() const;

 private:
  explicit SystemSpec(Variant v) : v_(std::move(v)) {}
  Variant v_;
};

class StatePoint {
 public:
  static StatePoint index(std::int64_t i) { return StatePoint(i); }
  /// Coordinates are reduced to [0,1).
  static StatePoint coords(std::vector<double> x);

  bool is_index() const { return std::holds_alternative<std::int64_t>(v_); }
  std::int64_t index() const;
  const std::vector<double>& coords() const;

  friend bool operator==(const StatePoint&, const StatePoint&) = default;

 private:
  explicit StatePoint(std::int64_t i) : v_(i) {}
  explicit StatePoint(std::vector<double> x) : v_(std::move(x)) {}
  std::variant<std::int64_t, std::vector<double>> v_;
};

/// Throws ConfigError unless x is a valid state of sys.
void validate_state(const SystemSpec& sys, const StatePoint& x);

/// A point drawn from the invariant measure (uniform / Haar on the fundamental domain).
StatePoint random_state(const SystemSpec& sys, CounterRng& rng);

/// T^n x in closed form.  Throws RangeError when the polynomial-in-n closed
/// form leaves exact 64-bit range (|n| > 2^31 for the quadratic variants).
StatePoint iterate(const SystemSpec& sys, const StatePoint& x, std::int64_t n);

class Observable {
 public:
  /// e(m . x); on a finite system of p states the state i is the point i/p.
  struct Character {
    std::vector<std::int64_t> m;
  };
  struct Indicator {
    std::vector<bool> members;
  };
  struct Table {
    std::vector<Complex> values;
  };
  /// e(z) of the normal-form point (x, y, z).
  struct HeisenbergVertical {};

  using Variant = std::variant<Character, Indicator, Table, HeisenbergVertical>;

  static Observable character(std::vector<std::int64_t> m);
  static Observable indicator(std::vector<bool> members);
  static Observable indicator_of(std::int64_t p, const std::vector<std::int64_t>& subset);
  static Observable table(std::vector<Complex> values);
  static Observable heisenberg_vertical();

  const Variant& variant() const { return v_; }
  double sup_bound() const { return sup_bound_; }
  bool is_real() const;

  /// Throws ConfigError if the observable cannot be evaluated on sys.
  void validate_for(const SystemSpec& sys) const;

  /// Unchecked evaluation; call validate_for once first.
  Complex operator()(const SystemSpec& sys, const StatePoint& x) const;

 private:
  Observable(Variant v, double bound) : v_(std::move(v)), sup_bound_(bound) {}
  Variant v_;
  double sup_bound_;
};

/// Integer polynomial c0 + c1 n + ... + cd n^d with d >= 1.
class PolynomialIterate {
 public:
  /// Coefficients from the constant term up; ConfigError if constant.
  explicit PolynomialIterate(std::vector<std::int64_t> coefficients);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<std::int64_t>& coefficients() const { return coeffs_; }

  /// Exact value; RangeError on 64-bit overflow.
  std::int64_t operator()(std::int64_t n) const;

 private:
  std::vector<std::int64_t> coeffs_;
};

/// n -> f(T^{exponent n} x) for n in [0, N).
SequenceWindow orbit_samples(const SystemSpec& sys, const StatePoint& x, const Observable& obs,
                             std::int64_t exponent, std::int64_t N);

/// n -> f(T^{exponent n} x) for n in [first, first + count).
SequenceWindow orbit_window(const SystemSpec& sys, const StatePoint& x, const Observable& obs,
                            std::int64_t exponent, std::int64_t first, std::int64_t count);

/// n -> f(T^{p(n)} x) for n in [0, N).
SequenceWindow polynomial_orbit_samples(const SystemSpec& sys, const StatePoint& x, const Observable& obs,
                                        const PolynomialIterate& p, std::int64_t N);

}  // namespace ergolab
