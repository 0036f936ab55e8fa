#pragma once

// Nilsequence weights b_n evaluable at any integer n.
//
// Only finite products, shifts and conjugates of basic nilsequences are
// represented.  Uniform limits are not: every weight used by an experiment is
// basic, so exact inequality checks carry no approximation error.  The step
// class is declared metadata and is never verified.

#include <array>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "ergolab/numeric.hpp"
#include "ergolab/sequence.hpp"

namespace ergolab {

class WeightSpec {
 public:
  /// b_n = e(n t)
  struct TrigPhase {
    double t;
  };
  /// b_n = e(n theta) (degree 1) or e(n^2 theta) via the skew product (degree 2)
  struct PolyPhase {
    double theta;
    int degree;
  };
  /// b_n = e(z-coordinate of a^n . x) on the Heisenberg nilmanifold
  struct HeisenbergBasic {
    std::array<double, 3> a;
    std::array<double, 3> x;
  };
  struct Product {
    std::vector<WeightSpec> factors;
  };
  struct Shift {
    std::shared_ptr<const WeightSpec> inner;
    std::int64_t m;
  };
  struct Conjugate {
    std::shared_ptr<const WeightSpec> inner;
  };
  struct Constant {
    Complex c;
  };

  using Variant = std::variant<TrigPhase, PolyPhase, HeisenbergBasic, Product, Shift, Conjugate, Constant>;

  static WeightSpec trig_phase(double t);
  /// ConfigError unless degree is 1 or 2.
  static WeightSpec poly_phase(double theta, int degree);
  static WeightSpec heisenberg_basic(std::array<double, 3> a, std::array<double, 3> x = {0.0, 0.0, 0.0});
  static WeightSpec product(std::vector<WeightSpec> factors);
  static WeightSpec shift(WeightSpec inner, std::int64_t m);
  static WeightSpec conjugate(WeightSpec inner);
  static WeightSpec constant(Complex c);

  const Variant& variant() const { return v_; }
  int step_class() const { return step_; }
  /// Upper bound on |b_n| for every n.
  double bound() const { return bound_; }

 private:
  WeightSpec(Variant v, int step, double bound) : v_(std::move(v)), step_(step), bound_(bound) {}
  Variant v_;
  int step_;
  double bound_;
};

/// b_n; RangeError when a closed form leaves exact range.
Complex weight_at(const WeightSpec& w, std::int64_t n);

/// b_n for n in [offset, offset + N).
SequenceWindow weight_window(const WeightSpec& w, std::int64_t offset, std::int64_t N);

}  // namespace ergolab
