// Lower boundary D(C) of the distortion-classification achievable region for
// a fixed discrete representation of a Bernoulli source: an LP in the
// per-symbol decoder probabilities, solved both by the generic simplex and by
// an exact continuous-knapsack specialization.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rdc/binary_info.hpp"
#include "rdc/solver.hpp"
#include "rdc/sweep.hpp"

namespace rdc {

// A representation Z of X taking n values, with marginal p_Z(i) = q[i] and
// conditional law p_{X|Z}(1|i) = eps[i]. The marginals must sum to 1 within
// 1e-12; inputs failing by more are rejected, never renormalized.
class RepresentationChannel {
 public:
  RepresentationChannel(std::vector<double> q, std::vector<double> eps);

  std::size_t n() const noexcept { return q_.size(); }
  const std::vector<double>& q() const noexcept { return q_; }
  const std::vector<double>& eps() const noexcept { return eps_; }

  // Derived source marginal q_X = P(X = 1) = sum q_i eps_i.
  double source_marginal() const noexcept;

 private:
  std::vector<double> q_;
  std::vector<double> eps_;
};

// Decoder parameterization p[i] = p_{X-hat|Z}(0|i).
struct DecoderProfile {
  std::vector<double> p;
};

struct DcSolution {
  Probability distortion;
  DecoderProfile decoder;
};

// Admissible closed interval for p_i: [1-eps, 1] when 1-eps >= 0.5, else
// [0, 1-eps]. The second branch closes the half-open interval of the
// underlying derivation; the endpoint changes the optimum value only on a
// measure-zero set of instances.
std::pair<double, double> decoder_box(double eps_i);

// The LP behind dc_lower_boundary: minimize the affine distortion (constant
// term excluded; see dc_distortion_offset) subject to the linearized
// classification constraint and the admissible boxes.
solver::LinearProgram dc_constraint_polytope(const RepresentationChannel& channel,
                                             Probability q_s1, Bits c);

// Constant part sum q_i (1 - eps_i) of the distortion objective.
double dc_distortion_offset(const RepresentationChannel& channel);

// Minimum P(X != X-hat) subject to the classification budget c, with the
// optimizing decoder. Requires q_s1 < 1/2, c >= H_b(q_s1), and a positive
// derived source marginal. The two solution paths below are cross-checked to
// 1e-9 on every call; infeasible instances raise FeasibilityError carrying
// the minimal constraint violation.
DcSolution dc_lower_boundary(const RepresentationChannel& channel,
                             Probability q_s1, Bits c);
DcSolution dc_lower_boundary_simplex(const RepresentationChannel& channel,
                                     Probability q_s1, Bits c);
DcSolution dc_lower_boundary_knapsack(const RepresentationChannel& channel,
                                      Probability q_s1, Bits c);

// D(C) samples over an ascending grid of classification budgets. Budgets the
// channel cannot reach are omitted and counted in infeasible_samples;
// malformed per-sample parameters are rethrown with the sample index and
// budget in the message.
CurveSweep dc_boundary_curve(const RepresentationChannel& channel,
                             Probability q_s1, const std::vector<double>& c_grid);

// Channel ingestion: JSON object {"q": [..], "eps": [..]} with equal-length
// arrays. Malformed input raises std::invalid_argument naming the offending
// key or byte position.
RepresentationChannel parse_channel_json(const std::string& text);
RepresentationChannel load_channel(const std::string& path);

}  // namespace rdc
