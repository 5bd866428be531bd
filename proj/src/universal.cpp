#include "rdc/universal.hpp"

#include <cmath>
#include <string>

#include "rdc/oneshot.hpp"

namespace rdc {
namespace {

constexpr double kSlack = 1e-12;

double xlog2x_over(double a, double b) {
  // a * log2(a / b) with the 0 log 0 = 0 convention (a = 0 dominates).
  if (a <= 0.0) return 0.0;
  return a * std::log2(a / b);
}

// Gradient-side log with probabilities clamped below 1e-15 so search
// directions stay finite at the boundary; reported objective values never
// use this path.
double safe_log2_ratio(double a, double b) {
  const double lo = 1e-15;
  return std::log2(std::max(a, lo) / std::max(b, lo));
}

}  // namespace

JointDecoderPmf::JointDecoderPmf(const std::array<double, 6>& free_coords)
    : free_(free_coords) {
  for (int k = 0; k < 2; ++k) {
    double sum = 0.0;
    for (int t = 0; t < 3; ++t) {
      const double v = free_[3 * k + t];
      if (v < -kSlack || v > 1.0 + kSlack) {
        throw std::invalid_argument("pmf coordinate outside [0,1]");
      }
      sum += v;
    }
    if (sum > 1.0 + kSlack) {
      throw std::invalid_argument(
          "conditional slice exceeds total probability one");
    }
  }
  for (double& v : free_) {
    if (v < 0.0) v = 0.0;
    if (v > 1.0) v = 1.0;
  }
}

double JointDecoderPmf::p(int i, int j, int k) const {
  const int base = 3 * k;
  if (i == 0 && j == 0) return free_[base + 0];
  if (i == 0 && j == 1) return free_[base + 1];
  if (i == 1 && j == 1) return free_[base + 2];
  // Eliminated coordinate p10|k; clamp tiny negative round-off.
  const double v = 1.0 - free_[base + 0] - free_[base + 1] - free_[base + 2];
  return v < 0.0 ? 0.0 : v;
}

ThetaBoundary theta_boundary(const SourceModel& model, Bits r) {
  const double b = asymptotic_b(model).value();
  const double hb = detail::h2(b);
  if (r.value() <= 0.0 || r.value() > hb + kSlack) {
    throw std::domain_error("rate budget " + std::to_string(r.value()) +
                            " outside the admissible interval (0, " +
                            std::to_string(hb) + "]");
  }
  const double qs1 = model.q_s1().value();
  const double c0 = detail::h2_inv(std::max(hb - r.value(), 0.0));
  const double c_min = detail::h2(qs1 + (1.0 - 2.0 * qs1) * c0);
  return ThetaBoundary{Probability(c0), Bits(c_min), Probability(b)};
}

Bits i_lb(Probability q_x, const JointDecoderPmf& pmf) {
  const double q = q_x.value();
  double total = 0.0;
  for (int t = 0; t < 3; ++t) {
    const double u = pmf.free_coords()[t];
    const double v = pmf.free_coords()[3 + t];
    const double mix = (1.0 - q) * u + q * v;
    total += (1.0 - q) * xlog2x_over(u, mix) + q * xlog2x_over(v, mix);
  }
  return Bits(std::max(total, 0.0));
}

Bits mutual_information_exact(Probability q_x, const JointDecoderPmf& pmf) {
  const double q = q_x.value();
  double total = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double u = pmf.p(i, j, 0);
      const double v = pmf.p(i, j, 1);
      const double mix = (1.0 - q) * u + q * v;
      total += (1.0 - q) * xlog2x_over(u, mix) + q * xlog2x_over(v, mix);
    }
  }
  return Bits(std::max(total, 0.0));
}

solver::LinearProgram lb_constraint_polytope(const SourceModel& model,
                                             const ThetaBoundary& theta) {
  const double q = model.q_x().value();
  const double s = model.q_s1().value();
  const double c0 = theta.c0.value();
  const double b = theta.b.value();
  const double hinv_cmin = detail::h2_inv(theta.c_min.value());

  solver::LinearProgram lp;
  lp.objective.assign(6, 0.0);
  lp.lower.assign(6, 0.0);
  lp.upper.assign(6, 1.0);

  // P(X != X1) = (1-q)(1 - p00|0 - p01|0) + q(p00|1 + p01|1) <= c0.
  lp.rows.push_back({-(1.0 - q), -(1.0 - q), 0.0, q, q, 0.0});
  lp.rhs.push_back(c0 - (1.0 - q));

  // P(X != X2) = (1-q)(p01|0 + p11|0) + q(1 - p01|1 - p11|1) <= b.
  lp.rows.push_back({0.0, 1.0 - q, 1.0 - q, 0.0, -q, -q});
  lp.rhs.push_back(b - q);

  // First-decoder classification, as the binary-convolution crossover form
  // q_s1 * (p10|0 + p11|0) <= q_s1 * c0 with p10|0 + p11|0 = 1 - p00|0 - p01|0.
  lp.rows.push_back({-(1.0 - 2.0 * s), -(1.0 - 2.0 * s), 0.0, 0.0, 0.0, 0.0});
  lp.rhs.push_back((1.0 - 2.0 * s) * (c0 - 1.0));

  // Second-decoder classification: q_s1 * (p01|0 + p11|0) <= H^-1(c_min).
  lp.rows.push_back({0.0, 1.0 - 2.0 * s, 1.0 - 2.0 * s, 0.0, 0.0, 0.0});
  lp.rhs.push_back(hinv_cmin - s);

  // Slice sums (the eliminated p10|k carries the remainder).
  lp.rows.push_back({1.0, 1.0, 1.0, 0.0, 0.0, 0.0});
  lp.rhs.push_back(1.0);
  lp.rows.push_back({0.0, 0.0, 0.0, 1.0, 1.0, 1.0});
  lp.rhs.push_back(1.0);

  return lp;
}

solver::LinearProgram ub_constraint_polytope(const SourceModel& model,
                                             const ThetaBoundary& theta,
                                             UbConstraintForm form) {
  solver::LinearProgram lp = lb_constraint_polytope(model, theta);
  const double s = model.q_s1().value();
  if (form == UbConstraintForm::forced_zero) {
    // Zero crossover budget for decoder 1: p10|0 + p11|0 = 1 - p00|0 - p01|0
    // forced to 0; pinning p11|0's box makes the forced zero exact.
    lp.rows[2] = {-1.0, -1.0, 0.0, 0.0, 0.0, 0.0};
    lp.rhs[2] = -1.0;
    lp.upper[2] = 0.0;
  } else {
    // As printed: q_s1 + (1-2*q_s1)(1 - p00|0 - p01|0) <= 0, which no pmf can
    // satisfy when q_s1 > 0; kept so the infeasibility is reportable.
    lp.rows[2] = {-(1.0 - 2.0 * s), -(1.0 - 2.0 * s), 0.0, 0.0, 0.0, 0.0};
    lp.rhs[2] = -(1.0 - s);
  }
  return lp;
}

namespace {

UniversalSolution solve_bound(const SourceModel& model,
                              const solver::LinearProgram& polytope,
                              const solver::ConvexOptions& options,
                              const char* label) {
  const double q = model.q_x().value();

  auto objective = [q](std::span<const double> x) {
    double total = 0.0;
    for (int t = 0; t < 3; ++t) {
      const double u = x[t];
      const double v = x[3 + t];
      const double mix = (1.0 - q) * u + q * v;
      total += (1.0 - q) * xlog2x_over(u, mix) + q * xlog2x_over(v, mix);
    }
    return total;
  };
  auto gradient = [q](std::span<const double> x, std::span<double> g) {
    for (int t = 0; t < 3; ++t) {
      const double u = x[t];
      const double v = x[3 + t];
      const double mix = (1.0 - q) * u + q * v;
      g[t] = (1.0 - q) * safe_log2_ratio(u, mix);
      g[3 + t] = q * safe_log2_ratio(v, mix);
    }
  };

  solver::SolveReport report =
      solver::minimize_convex(objective, gradient, polytope, options);
  if (report.status == solver::SolveStatus::infeasible) {
    throw FeasibilityError(std::string(label) + ": constraint set is empty",
                           report.objective);
  }

  std::array<double, 6> free_coords{};
  for (int j = 0; j < 6; ++j) free_coords[j] = report.x[j];
  if (report.status == solver::SolveStatus::iteration_limit) {
    throw ConvergenceError(
        std::string(label) + ": duality gap " + std::to_string(report.gap) +
            " above tolerance after iteration budget",
        report.gap, free_coords);
  }

  JointDecoderPmf pmf(free_coords);
  UniversalSolution out{Bits(std::max(report.objective, 0.0)), pmf,
                        mutual_information_exact(model.q_x(), pmf), report.gap,
                        report.iterations};
  return out;
}

}  // namespace

UniversalSolution rate_penalty_lower(const SourceModel& model, Bits r,
                                     const solver::ConvexOptions& options) {
  const ThetaBoundary theta = theta_boundary(model, r);
  return solve_bound(model, lb_constraint_polytope(model, theta), options,
                     "universal rate lower bound");
}

UniversalSolution rate_penalty_upper(const SourceModel& model, Bits r,
                                     UbConstraintForm form,
                                     const solver::ConvexOptions& options) {
  const ThetaBoundary theta = theta_boundary(model, r);
  return solve_bound(model, ub_constraint_polytope(model, theta, form), options,
                     "universal rate upper bound");
}

RatePenaltyBounds rate_penalty_bounds(const SourceModel& model, Bits r,
                                      const solver::ConvexOptions& options) {
  const UniversalSolution lo = rate_penalty_lower(model, r, options);
  const UniversalSolution hi =
      rate_penalty_upper(model, r, UbConstraintForm::forced_zero, options);
  RatePenaltyBounds out;
  out.r_lb = lo.rate;
  out.r_ub = hi.rate;
  out.penalty_lb = lo.rate.value() - r.value();
  out.penalty_ub = hi.rate.value() - r.value();
  return out;
}

}  // namespace rdc
