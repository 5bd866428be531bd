#include "rdc/dc_region.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace rdc {
namespace {

constexpr double kSlack = 1e-12;
constexpr double kCrossCheckTol = 1e-9;

void validate_inputs(const RepresentationChannel& channel, Probability q_s1,
                     Bits c) {
  if (q_s1.value() >= 0.5) {
    throw std::invalid_argument(
        "dc boundary requires q_s1 < 1/2 strictly, got " +
        std::to_string(q_s1.value()));
  }
  const double threshold = detail::h2(q_s1.value());
  if (c.value() < threshold - kSlack) {
    throw FeasibilityError(
        "classification budget " + std::to_string(c.value()) +
            " below the feasibility threshold H_b(q_s1) = " +
            std::to_string(threshold),
        threshold - c.value());
  }
  if (channel.source_marginal() <= 0.0) {
    throw std::invalid_argument(
        "dc boundary requires a positive derived source marginal "
        "(the classification constraint conditions on X = 1)");
  }
}

}  // namespace

RepresentationChannel::RepresentationChannel(std::vector<double> q,
                                             std::vector<double> eps)
    : q_(std::move(q)), eps_(std::move(eps)) {
  if (q_.empty() || q_.size() != eps_.size()) {
    throw std::invalid_argument(
        "channel requires equal-length nonempty q and eps arrays");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q_.size(); ++i) {
    if (!(q_[i] >= 0.0) || q_[i] > 1.0 + kSlack) {
      throw std::invalid_argument("channel marginal q[" + std::to_string(i) +
                                  "] outside [0,1]");
    }
    if (!(eps_[i] >= 0.0) || eps_[i] > 1.0 + kSlack) {
      throw std::invalid_argument("channel conditional eps[" +
                                  std::to_string(i) + "] outside [0,1]");
    }
    total += q_[i];
  }
  if (std::fabs(total - 1.0) > kSlack) {
    throw std::invalid_argument(
        "channel marginals must sum to 1 within 1e-12, got sum " +
        std::to_string(total));
  }
}

double RepresentationChannel::source_marginal() const noexcept {
  double qx = 0.0;
  for (std::size_t i = 0; i < q_.size(); ++i) qx += q_[i] * eps_[i];
  return qx;
}

std::pair<double, double> decoder_box(double eps_i) {
  if (1.0 - eps_i >= 0.5) return {1.0 - eps_i, 1.0};
  return {0.0, 1.0 - eps_i};
}

double dc_distortion_offset(const RepresentationChannel& channel) {
  double offset = 0.0;
  for (std::size_t i = 0; i < channel.n(); ++i) {
    offset += channel.q()[i] * (1.0 - channel.eps()[i]);
  }
  return offset;
}

solver::LinearProgram dc_constraint_polytope(const RepresentationChannel& channel,
                                             Probability q_s1, Bits c) {
  const std::size_t n = channel.n();
  const double s = q_s1.value();

  solver::LinearProgram lp;
  lp.objective.resize(n);
  lp.lower.resize(n);
  lp.upper.resize(n);
  std::vector<double> row(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double qi = channel.q()[i];
    const double ei = channel.eps()[i];
    lp.objective[i] = qi * (2.0 * ei - 1.0);
    row[i] = (1.0 - 2.0 * s) * qi * ei;
    const auto [lo, hi] = decoder_box(ei);
    lp.lower[i] = lo;
    lp.upper[i] = hi;
  }
  const double hinv = detail::h2_inv(std::min(c.value(), 1.0));
  lp.rows.push_back(std::move(row));
  lp.rhs.push_back((hinv - s) * (1.0 - dc_distortion_offset(channel)));
  return lp;
}

DcSolution dc_lower_boundary_simplex(const RepresentationChannel& channel,
                                     Probability q_s1, Bits c) {
  validate_inputs(channel, q_s1, c);
  const solver::LinearProgram lp = dc_constraint_polytope(channel, q_s1, c);
  const solver::SolveReport report = solver::solve_lp(lp);
  if (report.status != solver::SolveStatus::optimal) {
    throw FeasibilityError(
        "dc boundary LP infeasible: classification budget unreachable for "
        "this channel",
        report.objective);
  }
  return DcSolution{Probability(report.objective + dc_distortion_offset(channel)),
                    DecoderProfile{report.x}};
}

DcSolution dc_lower_boundary_knapsack(const RepresentationChannel& channel,
                                      Probability q_s1, Bits c) {
  validate_inputs(channel, q_s1, c);
  const solver::LinearProgram lp = dc_constraint_polytope(channel, q_s1, c);
  const std::size_t n = channel.n();
  const std::vector<double>& w = lp.objective;
  const std::vector<double>& g = lp.rows[0];
  const double rhs = lp.rhs[0];

  // MAP corner: each variable at the end of its box that minimizes the
  // objective pointwise (w_i <= 0 at the top, w_i > 0 at the bottom).
  std::vector<double> p(n);
  double lhs = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = w[i] <= 0.0 ? lp.upper[i] : lp.lower[i];
    lhs += g[i] * p[i];
  }

  if (lhs > rhs) {
    // Tighten by moving top-seated variables down, cheapest objective cost
    // per unit of constraint relief first; stable sort keeps index order on
    // ties so the optimizer is deterministic.
    std::vector<std::size_t> movable;
    for (std::size_t i = 0; i < n; ++i) {
      if (w[i] <= 0.0 && g[i] > 0.0 && lp.upper[i] > lp.lower[i]) {
        movable.push_back(i);
      }
    }
    std::stable_sort(movable.begin(), movable.end(),
                     [&](std::size_t a, std::size_t b) {
                       return -w[a] / g[a] < -w[b] / g[b];
                     });
    double excess = lhs - rhs;
    for (std::size_t i : movable) {
      if (excess <= 0.0) break;
      const double capacity = g[i] * (lp.upper[i] - lp.lower[i]);
      if (capacity <= excess) {
        p[i] = lp.lower[i];
        excess -= capacity;
      } else {
        p[i] = lp.upper[i] - excess / g[i];
        excess = 0.0;
      }
    }
    // Same feasibility tolerance as the simplex phase 1 so the two paths
    // classify near-boundary instances identically.
    if (excess > kCrossCheckTol) {
      throw FeasibilityError(
          "dc boundary LP infeasible: classification budget unreachable for "
          "this channel",
          excess);
    }
  }

  double objective = dc_distortion_offset(channel);
  for (std::size_t i = 0; i < n; ++i) objective += w[i] * p[i];
  return DcSolution{Probability(objective), DecoderProfile{std::move(p)}};
}

DcSolution dc_lower_boundary(const RepresentationChannel& channel,
                             Probability q_s1, Bits c) {
  DcSolution knapsack = dc_lower_boundary_knapsack(channel, q_s1, c);
  DcSolution simplex = dc_lower_boundary_simplex(channel, q_s1, c);
  const double gap =
      std::fabs(knapsack.distortion.value() - simplex.distortion.value());
  if (gap > kCrossCheckTol) {
    throw std::runtime_error(
        "dc boundary solver cross-check failed: knapsack and simplex differ "
        "by " +
        std::to_string(gap));
  }
  return knapsack;
}

CurveSweep dc_boundary_curve(const RepresentationChannel& channel,
                             Probability q_s1,
                             const std::vector<double>& c_grid) {
  CurveSweep sweep;
  sweep.kind = "dc";
  for (std::size_t k = 0; k < c_grid.size(); ++k) {
    try {
      const DcSolution sol = dc_lower_boundary(channel, q_s1, Bits(c_grid[k]));
      sweep.add(c_grid[k], sol.distortion.value());
    } catch (const FeasibilityError&) {
      // Budgets this channel cannot reach are dropped from the curve rather
      // than emitted as sentinels; the count preserves the information.
      ++sweep.infeasible_samples;
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("sample " + std::to_string(k) +
                                  " (c = " + std::to_string(c_grid[k]) +
                                  "): " + e.what());
    }
  }
  return sweep;
}

namespace {

std::vector<double> require_number_array(const nlohmann::json& obj,
                                         const char* key) {
  if (!obj.contains(key)) {
    throw std::invalid_argument(std::string("channel JSON missing \"") + key +
                                "\" key");
  }
  const auto& arr = obj.at(key);
  if (!arr.is_array()) {
    throw std::invalid_argument(std::string("channel JSON field \"") + key +
                                "\" must be an array");
  }
  std::vector<double> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw std::invalid_argument(std::string("channel JSON field \"") + key +
                                  "\"[" + std::to_string(i) +
                                  "] must be a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace

RepresentationChannel parse_channel_json(const std::string& text) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("channel JSON parse error: ") +
                                e.what());
  }
  if (!obj.is_object()) {
    throw std::invalid_argument("channel JSON must be an object with \"q\" "
                                "and \"eps\" arrays");
  }
  std::vector<double> q = require_number_array(obj, "q");
  std::vector<double> eps = require_number_array(obj, "eps");
  if (q.size() != eps.size()) {
    throw std::invalid_argument(
        "channel JSON arrays \"q\" and \"eps\" must have equal length (got " +
        std::to_string(q.size()) + " and " + std::to_string(eps.size()) + ")");
  }
  return RepresentationChannel(std::move(q), std::move(eps));
}

RepresentationChannel load_channel(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::invalid_argument("cannot open channel file: " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_channel_json(buf.str());
}

}  // namespace rdc
