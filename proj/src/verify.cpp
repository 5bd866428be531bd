#include "rdc/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <random>
#include <stdexcept>
#include <vector>

#include "rdc/dc_region.hpp"
#include "rdc/oneshot.hpp"
#include "rdc/oracle.hpp"
#include "rdc/universal.hpp"

namespace rdc {
namespace {

VerifyCheck make_check(std::string name, double residual, double tolerance) {
  VerifyCheck check;
  check.name = std::move(name);
  check.residual = residual;
  check.tolerance = tolerance;
  check.pass = residual <= tolerance;
  return check;
}

SourceModel random_model(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> range(0.01, 0.49);
  return SourceModel(range(rng), range(rng));
}

void verify_oneshot(const VerifyOptions& options,
                    std::vector<VerifyCheck>& out) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Closed forms against the interval oracles on random feasible tuples.
  double rdc_residual = 0.0;
  double drc_residual = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const SourceModel model = random_model(rng);
    const double hs = binary_entropy(model.q_s1());
    const Bits c(hs + (1.0 - hs) * unit(rng));
    const Probability d(0.6 * unit(rng));
    const Bits r(unit(rng));
    rdc_residual = std::max(
        rdc_residual,
        std::abs(oneshot_rdc(model, {d, c}).rate -
                 scalar_lp_oracle_rdc(model, {d, c})));
    drc_residual = std::max(
        drc_residual,
        std::abs(oneshot_drc(model, r, c).distortion -
                 scalar_lp_oracle_drc(model, r, c)));
  }
  out.push_back(
      make_check("oneshot rate curve vs interval oracle", rdc_residual, 1e-9));
  out.push_back(make_check("oneshot distortion curve vs interval oracle",
                           drc_residual, 1e-9));

  // Grid enumeration over the four reconstruction maps: never below the
  // closed form, and within one grid pitch of it.
  GridSpec grid;
  grid.resolution = options.resolution;
  grid.seed = options.seed;
  double undercut = 0.0;
  double gap = 0.0;
  for (int trial = 0; trial < 5; ++trial) {
    const SourceModel model = random_model(rng);
    const double hs = binary_entropy(model.q_s1());
    const OperatingPoint point{Probability(0.6 * unit(rng)),
                               Bits(hs + (1.0 - hs) * unit(rng))};
    const double exact = oneshot_rdc(model, point).rate;
    const double enumerated = four_map_enumeration_oracle(model, point, grid);
    undercut = std::max(undercut, exact - enumerated);
    gap = std::max(gap, enumerated - exact);
  }
  out.push_back(make_check("four-map enumeration stays above the closed form",
                           undercut, 1e-9));
  out.push_back(make_check(
      "four-map enumeration gap at the working resolution", gap,
      1.0 / static_cast<double>(options.resolution - 1) + 1e-9));

  // Block-coding curve never exceeds the one-shot curve.
  const SourceModel reference(0.3, 0.2);
  double ordering = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const OperatingPoint point{Probability(k / 100.0), Bits(0.9)};
    ordering = std::max(ordering, asymptotic_rdc(reference, point).value() -
                                      oneshot_rdc(reference, point).rate);
  }
  out.push_back(
      make_check("asymptotic curve at or below one-shot curve", ordering,
                 1e-12));
}

void verify_dc(const VerifyOptions& options, std::vector<VerifyCheck>& out) {
  const RepresentationChannel channel({0.5, 0.5}, {0.2, 0.8});
  const Probability q_s1(0.05);
  GridSpec grid;
  grid.resolution = options.resolution;
  grid.seed = options.seed;

  // Grid-oracle tolerance: the optimum moves by at most one pitch per
  // coordinate, weighted by the objective coefficients.
  double pitch_budget = 1e-9;
  for (std::size_t i = 0; i < channel.n(); ++i) {
    const auto [lo, hi] = decoder_box(channel.eps()[i]);
    pitch_budget += std::abs(channel.q()[i] * (2.0 * channel.eps()[i] - 1.0)) *
                    (hi - lo) / static_cast<double>(options.resolution - 1);
  }

  double path_residual = 0.0;
  double grid_gap = 0.0;
  double monotonicity = 0.0;
  double previous = 1.0;
  std::vector<double> values;
  for (int k = 0; k <= 10; ++k) {
    const Bits c(0.75 + 0.025 * k);
    const double via_simplex =
        dc_lower_boundary_simplex(channel, q_s1, c).distortion;
    const double via_knapsack =
        dc_lower_boundary_knapsack(channel, q_s1, c).distortion;
    const double via_grid = dc_grid_oracle(channel, q_s1, c, grid);
    path_residual =
        std::max(path_residual, std::abs(via_simplex - via_knapsack));
    grid_gap = std::max(grid_gap, std::abs(via_grid - via_simplex));
    monotonicity = std::max(monotonicity, via_knapsack - previous);
    previous = via_knapsack;
    values.push_back(via_knapsack);
  }
  out.push_back(make_check("dc boundary simplex vs knapsack", path_residual,
                           1e-9));
  out.push_back(
      make_check("dc boundary vs grid enumeration", grid_gap, pitch_budget));
  out.push_back(make_check("dc boundary nonincreasing in the budget",
                           monotonicity, 1e-12));
  out.push_back(make_check("dc boundary endpoint at full budget",
                           std::abs(values.back() - 0.2), 1e-9));
}

void verify_universal(const VerifyOptions& options,
                      std::vector<VerifyCheck>& out) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Surrogate ordering on random two-decoder pmfs.
  double surrogate_excess = -1.0;
  for (int trial = 0; trial < 2000; ++trial) {
    std::array<double, 6> coords;
    for (std::size_t slice = 0; slice < 2; ++slice) {
      double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
      const double total = a + b + c + d;
      coords[3 * slice + 0] = a / total;
      coords[3 * slice + 1] = b / total;
      coords[3 * slice + 2] = c / total;
    }
    const JointDecoderPmf pmf(coords);
    const Probability qx(0.01 + 0.48 * unit(rng));
    surrogate_excess =
        std::max(surrogate_excess,
                 i_lb(qx, pmf).value() - mutual_information_exact(qx, pmf));
  }
  out.push_back(make_check("surrogate at or below exact mutual information",
                           surrogate_excess, 1e-12));

  // Boundary parameters solve their defining equations.
  const SourceModel model(0.2, 0.05);
  const Bits r(0.1);
  const ThetaBoundary theta = theta_boundary(model, r);
  const double hb = binary_entropy(theta.b);
  const double eq_rate = std::abs(hb - binary_entropy(theta.c0) - r.value());
  const double eq_cmin = std::abs(
      binary_entropy(binary_convolution(model.q_s1(), theta.c0)) -
      theta.c_min.value());
  out.push_back(make_check("boundary parameters solve the rate equation",
                           eq_rate, 1e-10));
  out.push_back(make_check("boundary parameters solve the budget equation",
                           eq_cmin, 1e-10));

  // Conditional gradient vs projected gradient on both bound programs, plus
  // feasibility of the reported optimizers and the bound ordering.
  GridSpec grid;
  grid.resolution = options.resolution;
  grid.seed = options.seed;
  const UniversalSolution lower = rate_penalty_lower(model, r);
  const UniversalSolution upper = rate_penalty_upper(model, r);
  const double pg_lower =
      projected_gradient_oracle(model, r, PenaltySide::lower, grid);
  const double pg_upper =
      projected_gradient_oracle(model, r, PenaltySide::upper, grid);
  out.push_back(make_check("lower bound: conditional vs projected gradient",
                           std::abs(lower.rate - pg_lower), 1e-4));
  out.push_back(make_check("upper bound: conditional vs projected gradient",
                           std::abs(upper.rate - pg_upper), 1e-4));

  const auto violation = [&](const UniversalSolution& solution, bool is_upper) {
    const solver::LinearProgram lp =
        is_upper ? ub_constraint_polytope(model, theta,
                                          UbConstraintForm::forced_zero)
                 : lb_constraint_polytope(model, theta);
    const std::array<double, 6>& coords = solution.pmf.free_coords();
    return lp.max_violation(std::vector<double>(coords.begin(), coords.end()));
  };
  out.push_back(make_check("bound optimizers satisfy their constraints",
                           std::max(violation(lower, false),
                                    violation(upper, true)),
                           1e-9));
  out.push_back(make_check("lower bound at or below upper bound",
                           lower.rate - upper.rate, 1e-8));
}

}  // namespace

std::vector<VerifyCheck> run_verification(const std::string& scope,
                                          const VerifyOptions& options) {
  if (options.resolution < 2) {
    throw std::invalid_argument("verification resolution must be at least 2");
  }
  std::vector<VerifyCheck> checks;
  bool matched = false;
  if (scope == "all" || scope == "oneshot") {
    verify_oneshot(options, checks);
    matched = true;
  }
  if (scope == "all" || scope == "dc") {
    verify_dc(options, checks);
    matched = true;
  }
  if (scope == "all" || scope == "universal") {
    verify_universal(options, checks);
    matched = true;
  }
  if (!matched) {
    throw std::invalid_argument(
        "unknown verification scope \"" + scope +
        "\" (expected all, oneshot, dc, or universal)");
  }
  return checks;
}

}  // namespace rdc
