#include "rdc/binary_info.hpp"

#include <cmath>
#include <string>

namespace rdc {
namespace {

constexpr double kSlack = 1e-12;

double clamp_unit(double v, const char* what) {
  if (std::isnan(v) || v < -kSlack || v > 1.0 + kSlack) {
    throw std::invalid_argument(std::string(what) + " must lie in [0,1], got " +
                                std::to_string(v));
  }
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

}  // namespace

Probability::Probability(double v) : v_(clamp_unit(v, "probability")) {}

Bits::Bits(double v) {
  if (std::isnan(v) || v < -kSlack) {
    throw std::invalid_argument("bits value must be nonnegative, got " +
                                std::to_string(v));
  }
  v_ = v < 0.0 ? 0.0 : v;
}

SourceModel::SourceModel(double q_x, double q_s1) : q_x_(q_x), q_s1_(q_s1) {
  if (q_x_.value() > 0.5) {
    throw std::invalid_argument("source model requires q_x <= 1/2, got " +
                                std::to_string(q_x));
  }
  if (q_s1_.value() >= 0.5) {
    // 1 - 2*q_s1 divides the crossover threshold and the rate formulas'
    // denominator H_b(m) - H_b(q_s1) vanishes at q_s1 = 1/2.
    throw std::invalid_argument(
        "source model requires q_s1 < 1/2 strictly (degenerate task "
        "coupling), got " +
        std::to_string(q_s1));
  }
}

namespace detail {

double h2(double p) noexcept {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double h2_inv(double h) noexcept {
  if (h <= 0.0) return 0.0;
  if (h >= 1.0) return 0.5;
  double lo = 0.0;
  double hi = 0.5;
  // Bisection until the bracket collapses to adjacent doubles; h2 is strictly
  // increasing on [0, 1/2], so this pins the root to one ulp.
  while (true) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (h2(mid) < h) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

Bits binary_entropy(Probability p) { return detail::h2(p.value()); }

Probability inverse_binary_entropy(Bits h) {
  if (h.value() > 1.0 + 1e-12) {
    throw std::domain_error(
        "inverse binary entropy requires h in [0,1], got " +
        std::to_string(h.value()));
  }
  return detail::h2_inv(h.value() > 1.0 ? 1.0 : h.value());
}

Probability binary_convolution(Probability a, Probability b) {
  return a.value() * (1.0 - b.value()) + b.value() * (1.0 - a.value());
}

Probability task_prior_m(const SourceModel& model) {
  const double qx = model.q_x().value();
  const double qs1 = model.q_s1().value();
  return (1.0 - qx) * (1.0 - qs1) + qx * qs1;
}

Probability mgl_threshold(const SourceModel& model, Bits c) {
  const double qs1 = model.q_s1().value();
  const double threshold = detail::h2(qs1);
  if (c.value() < threshold - kSlack) {
    throw FeasibilityError(
        "classification budget " + std::to_string(c.value()) +
            " below the feasibility threshold H_b(q_s1) = " +
            std::to_string(threshold),
        threshold - c.value());
  }
  const double hinv =
      detail::h2_inv(c.value() > 1.0 ? 1.0 : (c.value() < threshold ? threshold : c.value()));
  const double c0 = (hinv - qs1) / (1.0 - 2.0 * qs1);
  // Round-off can leave a tiny negative value when c sits at the threshold.
  return c0 < 0.0 ? 0.0 : c0;
}

}  // namespace rdc
