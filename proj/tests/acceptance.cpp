// Acceptance gate: eleven independent checks covering every module at its
// stated tolerance and runtime budget. Prints one PASS/FAIL line per check
// and exits nonzero if any fail.
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "rdc/binary_info.hpp"
#include "rdc/dc_region.hpp"
#include "rdc/oneshot.hpp"
#include "rdc/oracle.hpp"
#include "rdc/universal.hpp"

using namespace rdc;

namespace {

int failures = 0;

// One line per criterion: index, verdict, label, detail, elapsed seconds
// against the budget (no budget when limit <= 0).
void report(int index, const std::string& label, bool pass, double seconds,
            double limit, const std::string& detail) {
  const bool in_time = limit <= 0.0 || seconds < limit;
  const bool ok = pass && in_time;
  if (!ok) ++failures;
  char timing[64];
  if (limit > 0.0) {
    std::snprintf(timing, sizeof(timing), "%.3f s < %g s limit", seconds,
                  limit);
  } else {
    std::snprintf(timing, sizeof(timing), "%.3f s", seconds);
  }
  std::printf("[%2d] %s %s (%s; %s)\n", index, ok ? "PASS" : "FAIL",
              label.c_str(), detail.c_str(), timing);
  std::fflush(stdout);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct RandomTuple {
  SourceModel model;
  double d;
  double c;
};

RandomTuple random_feasible_tuple(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double qx = 0.01 + 0.48 * unit(rng);
  const double qs1 = 0.01 + 0.48 * unit(rng);
  const double hs = binary_entropy(Probability(qs1)).value();
  const double c = hs + (1.0 - hs) * unit(rng);
  const double d = 0.5 * unit(rng);
  return RandomTuple{SourceModel(qx, qs1), d, c};
}

std::string scientific(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) return "<missing " + path.string() + ">";
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int run_cli(const std::filesystem::path& dir, const std::string& args) {
  const std::string cmd = "cd '" + dir.string() + "' && '" + RDC_CLI_BIN +
                          "' " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void criterion_1_rate_closed_form_vs_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const RandomTuple t = random_feasible_tuple(rng);
    const OperatingPoint point{Probability(t.d), Bits(t.c)};
    const double closed = oneshot_rdc(t.model, point).rate.value();
    const double oracle = scalar_lp_oracle_rdc(t.model, point).value();
    worst = std::max(worst, std::abs(closed - oracle));
  }
  report(1, "one-shot rate closed form vs interval oracle, 500 tuples",
         worst <= 1e-9, seconds_since(t0), 1.0,
         "max |diff| " + scientific(worst) + " <= 1e-9");
}

void criterion_2_distortion_closed_form_vs_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240602);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 500; ++trial) {
    const RandomTuple t = random_feasible_tuple(rng);
    const double r = 1.2 * unit(rng);
    const double closed = oneshot_drc(t.model, Bits(r), Bits(t.c))
                              .distortion.value();
    const double oracle = scalar_lp_oracle_drc(t.model, Bits(r), Bits(t.c))
                              .value();
    worst = std::max(worst, std::abs(closed - oracle));
  }
  report(2, "one-shot distortion closed form vs interval oracle, 500 tuples",
         worst <= 1e-9, seconds_since(t0), 1.0,
         "max |diff| " + scientific(worst) + " <= 1e-9");
}

void criterion_3_reference_rate_curve() {
  const auto t0 = std::chrono::steady_clock::now();
  const SourceModel model(0.3, 0.2);
  const Bits c(0.8);

  const double at_zero = oneshot_rdc(model, {Probability(0.0), c}).rate.value();
  const double plateau = oneshot_rdc(model, {Probability(0.5), c}).rate.value();

  // Breakpoint from the case condition: the activity level where the
  // classification term takes over from the distortion term.
  const double hm = binary_entropy(task_prior_m(model)).value();
  const double hs = binary_entropy(model.q_s1()).value();
  const double a_class = (hm - c.value()) / (hm - hs);
  const double breakpoint = model.q_x().value() * (1.0 - a_class);
  const double at_break =
      oneshot_rdc(model, {Probability(breakpoint), c}).rate.value();
  const double before_break =
      oneshot_rdc(model, {Probability(breakpoint - 1e-3), c}).rate.value();

  const bool pass = std::abs(at_zero - 0.881290899230693) <= 1e-6 &&
                    std::abs(plateau - 0.589888946635991) <= 1e-6 &&
                    std::abs(breakpoint - 0.099196060976827) <= 1e-6 &&
                    std::abs(at_break - plateau) <= 1e-9 &&
                    before_break > plateau + 1e-4;
  report(3, "reference rate curve: endpoint, plateau, breakpoint", pass,
         seconds_since(t0), 1.0,
         "R(0) " + scientific(at_zero) + ", plateau " + scientific(plateau) +
             ", breakpoint " + scientific(breakpoint));
}

void criterion_4_asymptotic_below_oneshot() {
  const auto t0 = std::chrono::steady_clock::now();
  const SourceModel model(0.3, 0.2);
  const Bits c(0.9);
  double worst = -1.0;
  for (int k = 0; k <= 100; ++k) {
    const Probability d(0.5 * k / 100.0);
    const double one = oneshot_rdc(model, {d, c}).rate.value();
    const double block = asymptotic_rdc(model, {d, c}).value();
    worst = std::max(worst, block - one);
  }
  report(4, "asymptotic rate at or below one-shot rate, 101 samples",
         worst <= 1e-12, seconds_since(t0), 1.0,
         "max (asymptotic - one-shot) " + scientific(worst) + " <= 1e-12");
}

void criterion_5_four_map_refinement() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240605);
  bool pass = true;
  double worst_gap = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const RandomTuple t = random_feasible_tuple(rng);
    const OperatingPoint point{Probability(t.d), Bits(t.c)};
    const double closed = oneshot_rdc(t.model, point).rate.value();
    double previous = 0.0;
    double final_value = 0.0;
    bool first = true;
    for (int resolution : {11, 101, 1001}) {
      GridSpec grid;
      grid.resolution = resolution;
      const double value =
          four_map_enumeration_oracle(t.model, point, grid).value();
      pass = pass && value >= closed - 1e-9;          // never beats the optimum
      if (!first) pass = pass && value <= previous + 1e-12;  // refinement helps
      previous = value;
      final_value = value;
      first = false;
    }
    worst_gap = std::max(worst_gap, final_value - closed);
  }
  pass = pass && worst_gap <= 2e-3;
  report(5, "four-map enumeration refines monotonically to the closed form",
         pass, seconds_since(t0), 30.0,
         "max final gap " + scientific(worst_gap) + " <= 2e-3 at resolution 1001");
}

void criterion_6_dc_region_three_way() {
  const auto t0 = std::chrono::steady_clock::now();
  const RepresentationChannel channel({0.5, 0.5}, {0.2, 0.8});
  const Probability qs1(0.05);
  bool pass = true;
  double worst_pair = 0.0;
  double worst_grid = 0.0;
  std::vector<double> curve;
  // 21 budgets spanning [0.75, 1] bits, spaced uniformly in the crossover
  // parameter H^-1(c): the LP value is convex in its right-hand side, which
  // is affine in that parameter, so second differences on this grid must be
  // nonnegative (a uniform-c grid is piecewise concave instead, inheriting
  // the curvature of H^-1).
  const double u_min = inverse_binary_entropy(Bits(0.75)).value();
  for (int k = 0; k <= 20; ++k) {
    const double u = u_min + (0.5 - u_min) * k / 20.0;
    const Bits c(binary_entropy(Probability(u)).value());
    const double s = dc_lower_boundary_simplex(channel, qs1, c)
                         .distortion.value();
    const double g = dc_lower_boundary_knapsack(channel, qs1, c)
                         .distortion.value();
    GridSpec grid;
    grid.resolution = 201;
    const double e = dc_grid_oracle(channel, qs1, c, grid).value();
    worst_pair = std::max(worst_pair, std::abs(s - g));
    worst_grid = std::max(worst_grid, std::abs(s - e));
    curve.push_back(s);
  }
  pass = pass && worst_pair <= 1e-9 && worst_grid <= 1e-2;
  for (std::size_t k = 1; k < curve.size(); ++k) {
    pass = pass && curve[k] <= curve[k - 1] + 1e-12;
  }
  for (std::size_t k = 2; k < curve.size(); ++k) {
    pass = pass && curve[k] - 2.0 * curve[k - 1] + curve[k - 2] >= -1e-8;
  }
  pass = pass && std::abs(curve.back() - 0.2) <= 1e-9;
  report(6, "distortion-classification boundary: simplex, greedy, grid oracle",
         pass, seconds_since(t0), 10.0,
         "max simplex-greedy " + scientific(worst_pair) +
             " <= 1e-9, max vs grid " + scientific(worst_grid) +
             " <= 1e-2, D(1) " + scientific(curve.back()));
}

void criterion_7_surrogate_inequality() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_margin = 1.0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::array<double, 6> free{};
    for (int k = 0; k < 2; ++k) {
      double draw[4];
      double total = 0.0;
      for (double& v : draw) {
        v = unit(rng) + 1e-9;
        total += v;
      }
      for (int t = 0; t < 3; ++t) free[3 * k + t] = draw[t] / total;
    }
    const JointDecoderPmf pmf(free);
    const Probability qx(0.01 + 0.48 * unit(rng));
    const double margin = mutual_information_exact(qx, pmf).value() -
                          i_lb(qx, pmf).value();
    worst_margin = std::min(worst_margin, margin);
  }
  report(7, "log-sum surrogate never exceeds the exact mutual information",
         worst_margin >= -1e-12, seconds_since(t0), 5.0,
         "min (exact - surrogate) " + scientific(worst_margin) + " >= -1e-12");
}

void criterion_8_universal_bounds() {
  const auto t0 = std::chrono::steady_clock::now();
  const SourceModel model(0.2, 0.05);
  bool pass = true;
  double worst_method_gap = 0.0;
  double worst_residual = 0.0;
  for (double r : {0.05, 0.1, 0.2}) {
    try {
      const UniversalSolution lo = rate_penalty_lower(model, Bits(r));
      const UniversalSolution hi = rate_penalty_upper(model, Bits(r));
      pass = pass && lo.rate.value() <= hi.rate.value() + 1e-8;

      GridSpec grid;
      const double pg_lo =
          projected_gradient_oracle(model, Bits(r), PenaltySide::lower, grid)
              .value();
      const double pg_hi =
          projected_gradient_oracle(model, Bits(r), PenaltySide::upper, grid)
              .value();
      worst_method_gap = std::max(worst_method_gap,
                                  std::abs(lo.rate.value() - pg_lo));
      worst_method_gap = std::max(worst_method_gap,
                                  std::abs(hi.rate.value() - pg_hi));

      const ThetaBoundary theta = theta_boundary(model, Bits(r));
      const solver::LinearProgram lb_lp = lb_constraint_polytope(model, theta);
      const solver::LinearProgram ub_lp =
          ub_constraint_polytope(model, theta, UbConstraintForm::forced_zero);
      const std::vector<double> lo_x(lo.pmf.free_coords().begin(),
                                     lo.pmf.free_coords().end());
      const std::vector<double> hi_x(hi.pmf.free_coords().begin(),
                                     hi.pmf.free_coords().end());
      worst_residual = std::max(worst_residual, lb_lp.max_violation(lo_x));
      worst_residual = std::max(worst_residual, ub_lp.max_violation(hi_x));
    } catch (const std::exception&) {
      pass = false;
    }
  }
  pass = pass && worst_method_gap <= 1e-4 && worst_residual <= 1e-9;
  report(8, "universal rate bounds: order, independent solver, feasibility",
         pass, seconds_since(t0), 60.0,
         "max method gap " + scientific(worst_method_gap) +
             " <= 1e-4, max residual " + scientific(worst_residual) +
             " <= 1e-9");
}

void criterion_9_theta_boundary_parameters() {
  const auto t0 = std::chrono::steady_clock::now();
  const SourceModel model(0.2, 0.05);
  const ThetaBoundary theta = theta_boundary(model, Bits(0.1));
  const double hb = binary_entropy(theta.b).value();
  const double hc0 = binary_entropy(theta.c0).value();
  const double folded =
      binary_entropy(Probability(0.05 + 0.9 * theta.c0.value())).value();
  const double res1 = std::abs(hb - hc0 - 0.1);
  const double res2 = std::abs(folded - theta.c_min.value());
  const bool pass = std::abs(theta.c0.value() - 0.1549) <= 1e-3 &&
                    std::abs(theta.c_min.value() - 0.7002) <= 1e-3 &&
                    res1 <= 1e-10 && res2 <= 1e-10;
  report(9, "operating-region boundary parameters solve their equations", pass,
         seconds_since(t0), 1.0,
         "c0 " + scientific(theta.c0.value()) + ", c_min " +
             scientific(theta.c_min.value()) + ", residuals " +
             scientific(res1) + ", " + scientific(res2));
}

void criterion_10_entropy_kernel() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst_round = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double h = static_cast<double>(k) / 1000.0;
    const double back =
        binary_entropy(inverse_binary_entropy(Bits(h))).value();
    worst_round = std::max(worst_round, std::abs(back - h));
  }
  std::mt19937_64 rng(20240610);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst_identity = 0.0;
  bool entropy_order = true;
  for (int trial = 0; trial < 10000; ++trial) {
    const double qx = 0.5 * unit(rng);
    const double qs1 = 0.4999 * unit(rng);
    const SourceModel model(qx, qs1);
    const double m = task_prior_m(model).value();
    const double identity =
        std::abs(std::abs(m - 0.5) - 2.0 * std::abs(qx - 0.5) *
                                          std::abs(qs1 - 0.5));
    worst_identity = std::max(worst_identity, identity);
    entropy_order = entropy_order &&
                    binary_entropy(Probability(m)).value() + 1e-12 >=
                        binary_entropy(Probability(qs1)).value();
  }
  const bool pass = worst_round <= 1e-10 && worst_identity <= 1e-15 &&
                    entropy_order;
  report(10, "entropy kernel: inverse round trip and task-prior identity",
         pass, seconds_since(t0), 1.0,
         "max round trip " + scientific(worst_round) +
             " <= 1e-10, max identity error " + scientific(worst_identity) +
             " <= 1e-15");
}

void criterion_11_cli_determinism() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() /
      ("rdc_acceptance_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  bool pass = true;

  const std::string rdc_cmd =
      "rdc-curve --q_x 0.3 --q_s1 0.2 --c 0.85 --samples 41 --format json";
  pass = pass && run_cli(dir, rdc_cmd + " --output first.json") == 0;
  pass = pass && run_cli(dir, rdc_cmd + " --output second.json") == 0;
  pass = pass && read_file(dir / "first.json") == read_file(dir / "second.json");

  const std::string uni_cmd =
      "universal --q_x 0.2 --q_s1 0.05 --r 0.1 --c_samples 9 --seed 7";
  pass = pass && run_cli(dir, uni_cmd + " --output first_u.csv") == 0;
  pass = pass && run_cli(dir, uni_cmd + " --output second_u.csv") == 0;
  pass = pass && read_file(dir / "first_u_lb.csv") ==
                     read_file(dir / "second_u_lb.csv");
  pass = pass && read_file(dir / "first_u_ub.csv") ==
                     read_file(dir / "second_u_ub.csv");

  std::filesystem::remove_all(dir);
  report(11, "curve and bound commands rerun byte-identical", pass,
         seconds_since(t0), 0.0, "two commands, two reruns each");
}

}  // namespace

int main() {
  criterion_1_rate_closed_form_vs_oracle();
  criterion_2_distortion_closed_form_vs_oracle();
  criterion_3_reference_rate_curve();
  criterion_4_asymptotic_below_oneshot();
  criterion_5_four_map_refinement();
  criterion_6_dc_region_three_way();
  criterion_7_surrogate_inequality();
  criterion_8_universal_bounds();
  criterion_9_theta_boundary_parameters();
  criterion_10_entropy_kernel();
  criterion_11_cli_determinism();
  if (failures > 0) {
    std::printf("%d of 11 acceptance checks failed\n", failures);
    return 1;
  }
  std::printf("all 11 acceptance checks passed\n");
  return 0;
}
