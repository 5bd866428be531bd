// Closed-form tradeoff curves for a Bernoulli source with a binary task
// variable: the one-shot rate-distortion-classification function, its dual
// distortion form, and the asymptotic (block-coding) rate function used as
// the benchmark, all with full feasibility and case-boundary handling.
#pragma once

#include "rdc/binary_info.hpp"

namespace rdc {

// A (distortion budget D, classification budget C) requirement pair.
struct OperatingPoint {
  Probability d;
  Bits c;
};

// Weights over the four deterministic reconstruction maps
// x -> x, x -> 1-x, x -> 0, x -> 1 chosen by the shared seed U.
struct SeedDistribution {
  double p1 = 0.0;
  double p2 = 0.0;
  double p3 = 0.0;
  double p4 = 0.0;
};

struct RdcSolution {
  Bits rate;
  SeedDistribution seed;
};

struct DrcSolution {
  Probability distortion;
  SeedDistribution seed;
};

// True iff the classification budget is achievable at all: c >= H_b(q_s1)
// (checked with 1e-12 slack for round-off).
bool feasible(const SourceModel& model, Bits c) noexcept;

// Minimum one-shot rate H(X-hat | U) subject to hamming distortion <= d and
// residual task entropy <= c. The optimizer always has the form
// (a*, 0, 1-a*, 0) with a* = max(0, 1 - d/q_x, (H_b(m) - c)/(H_b(m) - H_b(q_s1))),
// which evaluates each piecewise case and is continuous across breakpoints.
// Throws FeasibilityError when feasible(model, c) is false. A constant source
// (q_x = 0) needs no bits: rate 0 with seed (0,0,1,0).
RdcSolution oneshot_rdc(const SourceModel& model, const OperatingPoint& point);

// Dual form: minimum distortion subject to rate budget r and classification
// budget c, evaluated per the piecewise closed form. Equals
// q_x * (1 - max(a_rate, a_class)) where a_rate = min(r/H_b(q_x), 1) and
// a_class is the clamped classification activity level; when the
// classification requirement demands more codebook activity than the rate
// budget funds, the classification level prevails (the distortion then sits
// on the classification-limited plateau).
DrcSolution oneshot_drc(const SourceModel& model, Bits r, Bits c);

// The distortion floor parameter b of the asymptotic rate function, kept as
// the literal expression min{q_x(1-2q_s1)/(1-2q_s1), 1 - q_x(1-2q_s1)/(1-2q_s1)}
// (which simplifies to q_x for q_x <= 1/2) so a corrected form can be swapped
// in here without touching callers.
Probability asymptotic_b(const SourceModel& model);

// Asymptotic block-coding rate: H(b) - H(d) while d < c0, the plateau
// H(b) - H(c0) once the classification constraint binds, 0 when both budgets
// exceed b. Lies at or below oneshot_rdc everywhere.
Bits asymptotic_rdc(const SourceModel& model, const OperatingPoint& point);

// Inversion of the asymptotic rate function at fixed c: the least distortion
// whose asymptotic rate is <= r. Equals H^-1(H(b) - r) when that value is
// within the crossover budget c0(c); throws FeasibilityError when even
// unlimited distortion cannot bring the rate down to r (rate plateau > r).
Probability asymptotic_drc(const SourceModel& model, Bits r, Bits c);

}  // namespace rdc
