// Self-contained optimization kernels: a dense two-phase simplex for small
// box-constrained LPs and a conditional-gradient (Frank-Wolfe) method for
// smooth convex objectives over the same polytopes. No external solver
// dependencies; every problem in this library has <= 8 variables.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace rdc::solver {

enum class SolveStatus { optimal, infeasible, unbounded, iteration_limit };

// min objective . x  subject to  rows[i] . x <= rhs[i]  and  lower <= x <= upper.
// All bounds are finite; the feasible set is always a (possibly empty) polytope.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const noexcept { return objective.size(); }
  void validate() const;  // throws std::invalid_argument on malformed input

  // Largest constraint violation of x (rows and boxes); <= 0 means feasible.
  double max_violation(std::span<const double> x) const;
};

struct SolveReport {
  SolveStatus status = SolveStatus::infeasible;
  double objective = 0.0;
  std::vector<double> x;
  double gap = 0.0;       // duality gap where applicable (conditional gradient)
  long iterations = 0;
};

// Dense tableau simplex with Bland's anti-cycling rule. Infeasibility and
// unboundedness are reported in the status, never thrown. For infeasible
// problems, `objective` carries the phase-1 residual (minimal total
// constraint violation) as a certificate.
SolveReport solve_lp(const LinearProgram& lp);

using Objective = std::function<double(std::span<const double>)>;
using Gradient = std::function<void(std::span<const double>, std::span<double>)>;

struct ConvexOptions {
  int starts = 16;
  std::uint64_t seed = 1234567;  // fixed default so outputs are reproducible
  long max_iterations = 100000;
  double gap_tolerance = 1e-9;
};

// Conditional-gradient minimization of a smooth convex f over the polytope
// (the LinearProgram's objective field is ignored). Each linearized step is
// an LP solved by solve_lp; the step size refines the 2/(k+2) schedule with
// an exact line search along the Frank-Wolfe direction, which can only
// improve on the fixed schedule since the restriction of f to the segment is
// convex. Deterministic given the seed; returns the best run's final
// iterate with the duality gap evaluated at that iterate.
SolveReport minimize_convex(const Objective& f, const Gradient& grad,
                            const LinearProgram& polytope,
                            const ConvexOptions& options = {});

}  // namespace rdc::solver
