// Universal-encoder rate bounds: the boundary parameters (c0, c_min) of the
// sub-level set Theta(r) of jointly required operating points, and lower and
// upper bounds on the universal rate obtained by minimizing the log-sum
// surrogate of I(X; X-hat1, X-hat2) over two-decoder conditional pmfs subject
// to distortion and classification constraints.
#pragma once

#include <array>

#include "rdc/binary_info.hpp"
#include "rdc/solver.hpp"

namespace rdc {

// Conditional pmf p(x_hat1, x_hat2 | x) over {0,1}^3. Free coordinates are
// p00|0, p01|0, p11|0, p00|1, p01|1, p11|1 in that order; p10|k is eliminated
// as 1 minus the slice sum, matching the constraint algebra of the bound
// programs below.
class JointDecoderPmf {
 public:
  explicit JointDecoderPmf(const std::array<double, 6>& free_coords);

  // p(x_hat1 = i, x_hat2 = j | x = k), including the eliminated p10|k.
  double p(int i, int j, int k) const;

  const std::array<double, 6>& free_coords() const noexcept { return free_; }

 private:
  std::array<double, 6> free_;
};

// Boundary parameters of Theta(r): the crossover budget c0 with
// r = H(b) - H(c0), and the classification budget c_min that the same rate
// meets at the distortion floor b.
struct ThetaBoundary {
  Probability c0;
  Bits c_min;
  Probability b;
};

struct RatePenaltyBounds {
  Bits r_lb;
  Bits r_ub;
  double penalty_lb = 0.0;  // r_lb - r; may be negative (surrogate undercounts)
  double penalty_ub = 0.0;  // r_ub - r
};

struct UniversalSolution {
  Bits rate;           // minimized surrogate value
  JointDecoderPmf pmf;  // optimizer
  Bits exact_mi;       // exact mutual information at the optimizer (diagnostic)
  double gap = 0.0;    // conditional-gradient duality gap at the optimizer
  long iterations = 0;
};

// Raised when the constrained minimization exhausts its iteration budget
// before reaching the duality-gap tolerance; carries the best iterate.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double gap,
                   const std::array<double, 6>& best)
      : std::runtime_error(what), gap_(gap), best_(best) {}
  double gap() const noexcept { return gap_; }
  const std::array<double, 6>& best_free() const noexcept { return best_; }

 private:
  double gap_;
  std::array<double, 6> best_;
};

// Solves r = H(b) - H(c0) and c_min = H(q_s1 + (1-2*q_s1)*c0) for the given
// rate budget. Requires 0 < r <= H_b(b); throws std::domain_error naming the
// admissible interval otherwise.
ThetaBoundary theta_boundary(const SourceModel& model, Bits r);

// Log-sum surrogate of the mutual information: the (i,j) in {00, 01, 11}
// terms of the exact expansion, with the p10|k terms dropped. Satisfies
// 0 <= i_lb <= mutual_information_exact. q_x is P(X = 1).
Bits i_lb(Probability q_x, const JointDecoderPmf& pmf);

// Full eight-term I(X; X-hat1, X-hat2) with the 0 log 0 = 0 convention.
Bits mutual_information_exact(Probability q_x, const JointDecoderPmf& pmf);

// How the upper-bound program's tightened first-decoder constraint is posed.
// The as-printed affine form q_s1 + (1-2*q_s1)(p10|0 + p11|0) <= 0 is
// infeasible for any q_s1 > 0 (its left side is at least q_s1); the intended
// reading, a zero crossover budget for the first decoder, forces
// p10|0 + p11|0 <= 0. The literal form stays available so its infeasibility
// is reported rather than silently repaired.
enum class UbConstraintForm { forced_zero, literal };

// Constraint polytopes of the two bound programs over the free coordinates.
// Rows, in order: distortion of decoder 1 (budget c0), distortion of
// decoder 2 (budget b), classification of decoder 1 (crossover budget c0),
// classification of decoder 2 (budget c_min), and the two slice-sum rows.
solver::LinearProgram lb_constraint_polytope(const SourceModel& model,
                                             const ThetaBoundary& theta);
solver::LinearProgram ub_constraint_polytope(const SourceModel& model,
                                             const ThetaBoundary& theta,
                                             UbConstraintForm form);

// Lower bound on the universal rate: minimize i_lb over the lb polytope.
// Throws ConvergenceError if the gap tolerance is not met within budget.
UniversalSolution rate_penalty_lower(const SourceModel& model, Bits r,
                                     const solver::ConvexOptions& options = {});

// Upper-bound program: same objective over the tightened polytope. Throws
// FeasibilityError when the constraint set is empty (always, for the literal
// form with q_s1 > 0).
UniversalSolution rate_penalty_upper(const SourceModel& model, Bits r,
                                     UbConstraintForm form = UbConstraintForm::forced_zero,
                                     const solver::ConvexOptions& options = {});

// Both bounds plus the penalties relative to the rate budget r.
RatePenaltyBounds rate_penalty_bounds(const SourceModel& model, Bits r,
                                      const solver::ConvexOptions& options = {});

}  // namespace rdc
