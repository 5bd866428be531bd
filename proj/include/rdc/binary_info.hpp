// Binary-entropy arithmetic: entropy, its inverse, binary convolution, and
// the derived model quantities (task prior m, crossover threshold c0) that
// every other module builds on. All entropies are in bits (log base 2).
#pragma once

#include "rdc/errors.hpp"

namespace rdc {

// A real in [0,1]; construction rejects out-of-range values beyond a 1e-12
// round-off slack (values inside the slack are clamped to the boundary).
class Probability {
 public:
  constexpr Probability() noexcept = default;
  Probability(double v);  // NOLINT(google-explicit-constructor)

  constexpr double value() const noexcept { return v_; }
  constexpr operator double() const noexcept { return v_; }

 private:
  double v_ = 0.0;
};

// A nonnegative entropy/rate in base-2 units. Same 1e-12 slack as Probability
// for tiny negative round-off.
class Bits {
 public:
  constexpr Bits() noexcept = default;
  Bits(double v);  // NOLINT(google-explicit-constructor)

  constexpr double value() const noexcept { return v_; }
  constexpr operator double() const noexcept { return v_; }

 private:
  double v_ = 0.0;
};

// The Bernoulli pair (q_X, q_S1): X ~ Bern(q_X), task variable S = X xor S1
// with S1 ~ Bern(q_S1). Standing assumptions: q_X <= 1/2 and q_S1 < 1/2
// strictly (1 - 2*q_S1 appears in denominators throughout).
class SourceModel {
 public:
  SourceModel(double q_x, double q_s1);

  Probability q_x() const noexcept { return q_x_; }
  Probability q_s1() const noexcept { return q_s1_; }

 private:
  Probability q_x_;
  Probability q_s1_;
};

// H_b(p) = -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
Bits binary_entropy(Probability p);

// The unique p in [0, 1/2] with binary_entropy(p) = h, by bisection.
// Round trip |H_b(H^-1(h)) - h| <= 1e-10. Throws std::domain_error for
// h outside [0, 1] (with 1e-12 slack).
Probability inverse_binary_entropy(Bits h);

// a * b = a(1-b) + b(1-a), the crossover of cascaded binary-symmetric noise.
Probability binary_convolution(Probability a, Probability b);

// m = P(S = 0) = (1 - q_X)(1 - q_S1) + q_X q_S1; m >= 1/2 under the standing
// assumptions, and H_b(m) >= H_b(q_S1) with equality iff q_X in {0,1}.
Probability task_prior_m(const SourceModel& model);

// c0 = (H^-1(c) - q_S1) / (1 - 2 q_S1), the crossover-probability budget that
// a classification-entropy budget c translates to (Mrs. Gerber's lemma
// direction). Requires c >= H_b(q_S1); throws FeasibilityError otherwise.
Probability mgl_threshold(const SourceModel& model, Bits c);

namespace detail {
// Raw-double kernels for hot loops; the typed wrappers above validate.
double h2(double p) noexcept;
double h2_inv(double h) noexcept;  // caller guarantees h in [0,1]
}  // namespace detail

}  // namespace rdc
