#include "rdc/oneshot.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdc {
namespace {

constexpr double kSlack = 1e-12;

void require_feasible(const SourceModel& model, Bits c) {
  if (!feasible(model, c)) {
    const double threshold = detail::h2(model.q_s1().value());
    throw FeasibilityError(
        "classification budget " + std::to_string(c.value()) +
            " below the feasibility threshold H_b(q_s1) = " +
            std::to_string(threshold),
        threshold - c.value());
  }
}

// Activity level demanded by the classification budget: the least weight on
// the information-preserving maps for which
// a*H_b(q_s1) + (1-a)*H_b(m) <= c. Clamped to [0,1]; the upper clamp only
// engages inside the feasibility slack.
double class_activity(const SourceModel& model, double c) {
  const double hs = detail::h2(model.q_s1().value());
  const double hm = detail::h2(task_prior_m(model).value());
  if (hm - hs <= 0.0) return 0.0;  // q_x = 0: constant map already meets any c
  return std::clamp((hm - c) / (hm - hs), 0.0, 1.0);
}

}  // namespace

bool feasible(const SourceModel& model, Bits c) noexcept {
  return c.value() >= detail::h2(model.q_s1().value()) - kSlack;
}

RdcSolution oneshot_rdc(const SourceModel& model, const OperatingPoint& point) {
  require_feasible(model, point.c);
  const double qx = model.q_x().value();
  const double hx = detail::h2(qx);

  double a = class_activity(model, point.c.value());
  if (qx > 0.0) {
    a = std::max(a, 1.0 - point.d.value() / qx);
  }
  a = std::clamp(a, 0.0, 1.0);

  RdcSolution out;
  out.rate = hx * a;
  out.seed = SeedDistribution{a, 0.0, 1.0 - a, 0.0};
  return out;
}

DrcSolution oneshot_drc(const SourceModel& model, Bits r, Bits c) {
  require_feasible(model, c);
  const double qx = model.q_x().value();
  const double hx = detail::h2(qx);

  const double a_rate = hx > 0.0 ? std::min(r.value() / hx, 1.0) : 1.0;
  const double a = std::max(a_rate, class_activity(model, c.value()));

  DrcSolution out;
  out.distortion = qx * (1.0 - a);
  out.seed = SeedDistribution{a, 0.0, 1.0 - a, 0.0};
  return out;
}

Probability asymptotic_b(const SourceModel& model) {
  const double qx = model.q_x().value();
  const double qs1 = model.q_s1().value();
  // Literal form; the (1 - 2 q_s1) factors cancel, leaving min{q_x, 1 - q_x}.
  const double scaled = qx * (1.0 - 2.0 * qs1) / (1.0 - 2.0 * qs1);
  return std::min(scaled, 1.0 - scaled);
}

Bits asymptotic_rdc(const SourceModel& model, const OperatingPoint& point) {
  require_feasible(model, point.c);
  const double b = asymptotic_b(model).value();
  const double c0 = mgl_threshold(model, point.c).value();
  const double d = point.d.value();
  const double hb = detail::h2(b);
  if (d < c0) {
    return d <= b ? Bits(std::max(hb - detail::h2(d), 0.0)) : Bits(0.0);
  }
  return c0 <= b ? Bits(std::max(hb - detail::h2(c0), 0.0)) : Bits(0.0);
}

Probability asymptotic_drc(const SourceModel& model, Bits r, Bits c) {
  require_feasible(model, c);
  const double b = asymptotic_b(model).value();
  const double hb = detail::h2(b);
  if (r.value() >= hb) return 0.0;  // rate budget covers lossless coding of b

  // On the strictly decreasing branch the rate is H(b) - H(d); past the
  // crossover budget c0 the rate plateaus and no distortion helps.
  const double d = detail::h2_inv(hb - r.value());
  const double c0 = mgl_threshold(model, c).value();
  if (d > c0 + kSlack) {
    throw FeasibilityError(
        "rate budget " + std::to_string(r.value()) +
            " below the classification-limited plateau H(b) - H(c0) = " +
            std::to_string(hb - detail::h2(c0)),
        (hb - detail::h2(c0)) - r.value());
  }
  return d;
}

}  // namespace rdc
