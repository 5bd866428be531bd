#include "rdc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rdc/errors.hpp"

namespace rdc {
namespace {

constexpr double kSlack = 1e-12;

void check_grid(const GridSpec& grid) {
  if (grid.resolution < 2) {
    throw std::invalid_argument("grid resolution must be at least 2, got " +
                                std::to_string(grid.resolution));
  }
}

void require_class_budget(double c, double hs) {
  if (c < hs - kSlack) {
    throw FeasibilityError(
        "classification budget " + std::to_string(c) +
            " below the feasibility threshold H_b(q_s1) = " +
            std::to_string(hs),
        hs - c);
  }
}

}  // namespace

Bits scalar_lp_oracle_rdc(const SourceModel& model, const OperatingPoint& point) {
  const double qx = model.q_x();
  const double hs = detail::h2(model.q_s1());
  const double m = (1.0 - qx) * (1.0 - model.q_s1()) + qx * model.q_s1();
  const double hm = detail::h2(m);

  // Reduced program in the activity a in [0, 1]: both constraints are
  // half-lines. Distortion q_x(1-a) <= d gives a >= 1 - d/q_x; the
  // classification value a*hs + (1-a)*hm is decreasing in a (hm >= hs), so
  // its floor over [0, 1] is hs and the budget c cuts off a >= (hm-c)/(hm-hs).
  require_class_budget(point.c.value(), hs);
  double lo = 0.0;
  if (qx > 0.0) lo = std::max(lo, 1.0 - point.d.value() / qx);
  if (hm - hs > kSlack) lo = std::max(lo, (hm - point.c.value()) / (hm - hs));
  lo = std::clamp(lo, 0.0, 1.0);
  return Bits(detail::h2(qx) * lo);
}

Probability scalar_lp_oracle_drc(const SourceModel& model, Bits r, Bits c) {
  const double qx = model.q_x();
  const double hx = detail::h2(qx);
  const double hs = detail::h2(model.q_s1());
  const double m = (1.0 - qx) * (1.0 - model.q_s1()) + qx * model.q_s1();
  const double hm = detail::h2(m);

  // Distortion q_x(1-a) falls with the activity a. The rate budget caps the
  // interval at sup = r/hx and the classification budget demands the floor
  // inf = (hm-c)/(hm-hs); the binding one is whichever asks for more
  // activity, so a* is the larger of the two (classification overrides the
  // rate cap when the intervals separate).
  require_class_budget(c.value(), hs);
  const double a_rate = (hx > 0.0) ? std::min(r.value() / hx, 1.0) : 1.0;
  double a_class = 0.0;
  if (hm - hs > kSlack) {
    a_class = std::clamp((hm - c.value()) / (hm - hs), 0.0, 1.0);
  }
  const double a = std::max(a_rate, a_class);
  return Probability(qx * (1.0 - a));
}

Bits four_map_enumeration_oracle(const SourceModel& model,
                                 const OperatingPoint& point,
                                 const GridSpec& grid) {
  check_grid(grid);
  const double qx = model.q_x();
  const double hx = detail::h2(qx);
  const double hs = detail::h2(model.q_s1());
  const double m = (1.0 - qx) * (1.0 - model.q_s1()) + qx * model.q_s1();
  const double hm = detail::h2(m);
  const double d = point.d.value();
  const double c = point.c.value();

  // Sweep the integer grid on the simplex of weights (p1, p2, p3, p4) over
  // the four reconstruction maps (copy, flip, emit 0, emit 1). For fixed
  // copy and flip weights the rate hx*(p1+p2) and the classification value
  // (p1+p2)*hs + (p3+p4)*hm do not depend on how the leftover mass splits
  // between the constant maps, while the distortion p2 + qx*p3 + (1-qx)*p4
  // is smallest with all of it on "emit 0" (qx <= 1/2). Testing that split
  // alone therefore keeps exactly the feasible (k1, k2) blocks, and each
  // block has one rate value, so the scan returns the same minimum as the
  // full three-dimensional sweep.
  const int n = grid.resolution - 1;
  const double inv = 1.0 / static_cast<double>(n);
  double best = std::numeric_limits<double>::infinity();
  double least_violation = std::numeric_limits<double>::infinity();
  for (int k1 = 0; k1 <= n; ++k1) {
    for (int k2 = 0; k1 + k2 <= n; ++k2) {
      const double p1 = static_cast<double>(k1) * inv;
      const double p2 = static_cast<double>(k2) * inv;
      const double p3 = static_cast<double>(n - k1 - k2) * inv;
      const double active = p1 + p2;
      const double dist_excess = p2 + qx * p3 - d;
      const double class_excess = active * hs + (1.0 - active) * hm - c;
      least_violation =
          std::min(least_violation, std::max(dist_excess, class_excess));
      if (dist_excess > kSlack || class_excess > kSlack) continue;
      best = std::min(best, hx * active);
    }
  }
  if (!std::isfinite(best)) {
    throw FeasibilityError(
        "no mixture of the four reconstruction maps meets the distortion "
        "and classification budgets",
        least_violation);
  }
  return Bits(best);
}

Probability dc_grid_oracle(const RepresentationChannel& channel,
                           Probability q_s1, Bits c, const GridSpec& grid) {
  check_grid(grid);
  const std::size_t n = channel.n();
  if (n > 5) {
    throw std::invalid_argument(
        "dc grid oracle enumerates at most 5 representation symbols, got " +
        std::to_string(n));
  }
  const double s = q_s1.value();
  if (s >= 0.5) {
    throw std::invalid_argument(
        "dc grid oracle requires q_s1 < 1/2 strictly, got " +
        std::to_string(s));
  }

  // Restate the boundary program from scratch: distortion
  // sum q_i (1 - eps_i) + sum q_i (2 eps_i - 1) p_i, one linearized
  // classification row, and per-symbol admissible intervals for
  // p_i = P(X-hat = 0 | Z = i).
  std::vector<double> w(n), g(n), lo(n), hi(n);
  double offset = 0.0;
  double marginal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double qi = channel.q()[i];
    const double ei = channel.eps()[i];
    offset += qi * (1.0 - ei);
    marginal += qi * ei;
    w[i] = qi * (2.0 * ei - 1.0);
    g[i] = (1.0 - 2.0 * s) * qi * ei;
    if (1.0 - ei >= 0.5) {
      lo[i] = 1.0 - ei;
      hi[i] = 1.0;
    } else {
      lo[i] = 0.0;
      hi[i] = 1.0 - ei;
    }
  }
  const double rhs = (detail::h2_inv(std::min(c.value(), 1.0)) - s) * marginal;

  const int points = grid.resolution;
  std::vector<int> digit(n, 0);
  std::vector<double> p(n);
  double best = std::numeric_limits<double>::infinity();
  double least_violation = std::numeric_limits<double>::infinity();
  while (true) {
    double lhs = 0.0;
    double value = offset;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = lo[i] + (hi[i] - lo[i]) * static_cast<double>(digit[i]) /
                         static_cast<double>(points - 1);
      lhs += g[i] * p[i];
      value += w[i] * p[i];
    }
    least_violation = std::min(least_violation, lhs - rhs);
    if (lhs <= rhs + kSlack) best = std::min(best, value);

    // Odometer over the per-symbol grids.
    std::size_t pos = 0;
    while (pos < n && ++digit[pos] == points) digit[pos++] = 0;
    if (pos == n) break;
  }
  if (!std::isfinite(best)) {
    throw FeasibilityError(
        "no decoder profile on the admissible grid meets the classification "
        "budget",
        least_violation);
  }
  return Probability(best);
}

namespace {

// Euclidean projection onto {x : rows.x <= rhs, lower <= x <= upper} by a
// primal active-set method. Boxes are folded into the inequality list. With
// an identity Hessian every equality-restricted subproblem reduces to a
// Gram-matrix solve: project z onto the active rows' affine hull, walk
// toward it until a new row blocks, and drop rows whose multiplier turns
// negative once the walk stalls.
class PolytopeProjector {
 public:
  explicit PolytopeProjector(const solver::LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    for (std::size_t r = 0; r < lp.rows.size(); ++r) {
      rows_.push_back(lp.rows[r]);
      rhs_.push_back(lp.rhs[r]);
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<double> e(n, 0.0);
      e[i] = 1.0;
      rows_.push_back(e);
      rhs_.push_back(lp.upper[i]);
      e[i] = -1.0;
      rows_.push_back(std::move(e));
      rhs_.push_back(-lp.lower[i]);
    }
  }

  // x must be feasible on entry and stays feasible throughout; the iteration
  // guard can only stop early at a feasible, not-yet-optimal point, which a
  // backtracking caller tolerates.
  std::vector<double> project(std::vector<double> x,
                              const std::vector<double>& z) const {
    const std::size_t n = z.size();
    std::vector<std::size_t> active;
    std::vector<double> lambda;
    for (int guard = 0; guard < 200; ++guard) {
      if (!solve_restricted(active, z, lambda)) {
        // Dependent working set (possible after a degenerate add): retire
        // the newest row and retry.
        active.pop_back();
        continue;
      }
      std::vector<double> y = z;
      for (std::size_t k = 0; k < active.size(); ++k) {
        for (std::size_t i = 0; i < n; ++i) {
          y[i] -= lambda[k] * rows_[active[k]][i];
        }
      }
      double step_norm = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        step_norm = std::max(step_norm, std::abs(y[i] - x[i]));
      }
      if (step_norm <= 1e-12) {
        // Stalled on the working set: optimal once no multiplier is negative.
        std::size_t worst = active.size();
        double most_negative = -1e-11;
        for (std::size_t k = 0; k < active.size(); ++k) {
          if (lambda[k] < most_negative) {
            most_negative = lambda[k];
            worst = k;
          }
        }
        if (worst == active.size()) return x;
        active.erase(active.begin() + static_cast<std::ptrdiff_t>(worst));
        continue;
      }
      // Walk from x toward y, stopping at the first blocking row.
      double alpha = 1.0;
      std::size_t blocker = rows_.size();
      for (std::size_t j = 0; j < rows_.size(); ++j) {
        if (std::find(active.begin(), active.end(), j) != active.end()) {
          continue;
        }
        double along = 0.0;
        double at = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          along += rows_[j][i] * (y[i] - x[i]);
          at += rows_[j][i] * x[i];
        }
        if (along <= 1e-13) continue;
        const double t = (rhs_[j] - at) / along;
        if (t < alpha) {
          alpha = std::max(t, 0.0);
          blocker = j;
        }
      }
      for (std::size_t i = 0; i < n; ++i) x[i] += alpha * (y[i] - x[i]);
      if (blocker < rows_.size()) active.push_back(blocker);
    }
    return x;
  }

 private:
  // Multipliers of min |y - z|^2 s.t. the active rows hold with equality:
  // (A A^T) lambda = A z - b, y = z - A^T lambda. False when the Gram matrix
  // is numerically singular.
  bool solve_restricted(const std::vector<std::size_t>& active,
                        const std::vector<double>& z,
                        std::vector<double>& lambda) const {
    const std::size_t k = active.size();
    lambda.assign(k, 0.0);
    if (k == 0) return true;
    std::vector<std::vector<double>> gram(k, std::vector<double>(k + 1, 0.0));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
          dot += rows_[active[a]][i] * rows_[active[b]][i];
        }
        gram[a][b] = dot;
      }
      double az = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) {
        az += rows_[active[a]][i] * z[i];
      }
      gram[a][k] = az - rhs_[active[a]];
    }
    for (std::size_t col = 0; col < k; ++col) {
      std::size_t pivot = col;
      for (std::size_t r = col + 1; r < k; ++r) {
        if (std::abs(gram[r][col]) > std::abs(gram[pivot][col])) pivot = r;
      }
      if (std::abs(gram[pivot][col]) < 1e-12) return false;
      std::swap(gram[col], gram[pivot]);
      for (std::size_t r = 0; r < k; ++r) {
        if (r == col) continue;
        const double factor = gram[r][col] / gram[col][col];
        for (std::size_t cc = col; cc <= k; ++cc) {
          gram[r][cc] -= factor * gram[col][cc];
        }
      }
    }
    for (std::size_t r = 0; r < k; ++r) lambda[r] = gram[r][k] / gram[r][r];
    return true;
  }

  std::vector<std::vector<double>> rows_;
  std::vector<double> rhs_;
};

double surrogate_value(double qx, const std::vector<double>& x) {
  return i_lb(Probability(qx),
              JointDecoderPmf({x[0], x[1], x[2], x[3], x[4], x[5]}));
}

void surrogate_gradient(double qx, const std::vector<double>& x,
                        std::vector<double>& g) {
  constexpr double kTiny = 1e-15;
  constexpr double kPairZero = 1e-13;
  // One-sided slopes for entering a pair that currently carries no mass.
  // The surrogate is conical at such a pair, so no single gradient exists;
  // clamping the log-ratio formula there reports a slope of zero, which lets
  // the projection arc dump probability into the pair for free and stalls
  // the descent at points that are not stationary. Charging the per-axis
  // entry cost keeps the arc honest; the Armijo test on the true value still
  // guards every accepted step.
  const double enter_u = (1.0 - qx) * std::log2(1.0 / (1.0 - qx));
  const double enter_v = qx * std::log2(1.0 / qx);
  for (std::size_t t = 0; t < 3; ++t) {
    if (x[t] <= kPairZero && x[t + 3] <= kPairZero) {
      g[t] = enter_u;
      g[t + 3] = enter_v;
      continue;
    }
    const double u = std::max(x[t], kTiny);
    const double v = std::max(x[t + 3], kTiny);
    const double mix = std::max((1.0 - qx) * x[t] + qx * x[t + 3], kTiny);
    g[t] = (1.0 - qx) * std::log2(u / mix);
    g[t + 3] = qx * std::log2(v / mix);
  }
}

}  // namespace

Bits projected_gradient_oracle(const SourceModel& model, Bits r,
                               PenaltySide side, const GridSpec& grid) {
  check_grid(grid);
  const ThetaBoundary theta = theta_boundary(model, r);
  const solver::LinearProgram lp =
      (side == PenaltySide::lower)
          ? lb_constraint_polytope(model, theta)
          : ub_constraint_polytope(model, theta, UbConstraintForm::forced_zero);
  const double qx = model.q_x();

  // Deterministic-copy decoders: feasible for both programs whenever they
  // are feasible at all, and the anchor for scattering the random starts.
  std::vector<double> base = {1.0, 0.0, 0.0, 0.0, 0.0, 1.0};
  const double base_violation = lp.max_violation(base);
  if (base_violation > 1e-9) {
    throw FeasibilityError(
        "rate-penalty bound program has an empty constraint set",
        base_violation);
  }

  const PolytopeProjector projector(lp);
  std::mt19937_64 rng(grid.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  double best = std::numeric_limits<double>::infinity();
  for (int start = 0; start < 8; ++start) {
    std::vector<double> x = base;
    if (start > 0) {
      std::vector<double> target(6);
      for (std::size_t i = 0; i < 6; ++i) {
        target[i] = lp.lower[i] + (lp.upper[i] - lp.lower[i]) * unit(rng);
      }
      x = projector.project(base, target);
    }
    double fx = surrogate_value(qx, x);
    std::vector<double> g(6), target(6), candidate(6);
    for (long it = 0; it < 4000; ++it) {
      surrogate_gradient(qx, x, g);
      double alpha = 1.0;
      bool accepted = false;
      double step_norm = 0.0;
      for (int trial = 0; trial < 60; ++trial) {
        for (std::size_t i = 0; i < 6; ++i) target[i] = x[i] - alpha * g[i];
        candidate = projector.project(x, target);
        step_norm = 0.0;
        double directional = 0.0;
        for (std::size_t i = 0; i < 6; ++i) {
          step_norm = std::max(step_norm, std::abs(candidate[i] - x[i]));
          directional += g[i] * (candidate[i] - x[i]);
        }
        if (step_norm <= 1e-13) break;  // stationary at this step size
        const double fc = surrogate_value(qx, candidate);
        if (fc <= fx + 1e-4 * directional) {
          x = candidate;
          fx = fc;
          accepted = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!accepted || step_norm <= 1e-11) break;
    }
    best = std::min(best, fx);
  }
  return Bits(best);
}

}  // namespace rdc
