// Independent brute-force oracles validating the closed forms and solvers at
// desk scale. Each oracle re-derives its answer from the problem statement
// (entropy kernels aside) without calling the code it validates: the scalar
// oracles do interval arithmetic on the reduced one-variable programs, the
// grid oracles enumerate feasible points directly, and the projected-gradient
// oracle re-solves the universal bound programs with an unrelated method.
#pragma once

#include <cstdint>

#include "rdc/dc_region.hpp"
#include "rdc/oneshot.hpp"
#include "rdc/universal.hpp"

namespace rdc {

struct GridSpec {
  int resolution = 101;  // points per axis, >= 2
  std::uint64_t seed = 1;
};

// Ground truth for the one-shot rate curve: minimize H_b(q_x)*a over the
// intersection of the distortion interval {a : q_x(1-a) <= d} and the
// classification interval {a : a*H_b(q_s1) + (1-a)*H_b(m) <= c} in [0,1].
// An empty intersection happens exactly when c < H_b(q_s1).
Bits scalar_lp_oracle_rdc(const SourceModel& model, const OperatingPoint& point);

// Ground truth for the one-shot distortion curve: maximize the activity a
// within the rate interval [0, r/H_b(q_x)]; when the classification interval
// [a_class, 1] demands more activity than the rate budget funds, the value at
// a_class prevails (classification-limited regime). Distortion q_x*(1-a).
Probability scalar_lp_oracle_drc(const SourceModel& model, Bits r, Bits c);

// Exhaustive search over the integer grid on the 3-simplex of seed weights
// (p1, p2, p3, p4), checking the distortion and classification constraints
// directly and keeping the cheapest feasible rate. Upper-bounds the closed
// form; converges to it on nested refinement (e.g. resolutions 11/101/1001).
Bits four_map_enumeration_oracle(const SourceModel& model,
                                 const OperatingPoint& point,
                                 const GridSpec& grid);

// Exhaustive box grid over decoder profiles for the DC-region LP; requires
// n <= 5. Upper-bounds the LP optimum, converging on refinement.
Probability dc_grid_oracle(const RepresentationChannel& channel,
                           Probability q_s1, Bits c, const GridSpec& grid);

enum class PenaltySide { lower, upper };

// Multi-start projected-gradient descent on the universal-bound objective,
// with Euclidean projection onto the constraint polytope via a primal
// active-set least-distance subproblem. Independent comparator for
// minimize_convex (agrees within 1e-4 on the acceptance sweep).
Bits projected_gradient_oracle(const SourceModel& model, Bits r,
                               PenaltySide side, const GridSpec& grid);

}  // namespace rdc
