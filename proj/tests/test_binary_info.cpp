// Entropy-kernel tests. Frozen reference values come from independent
// derivations: direct evaluation of the entropy formula and a standalone
// 200-step bisection, not the functions under test.
#include <cmath>
#include <random>

#include <doctest.h>

#include "rdc/binary_info.hpp"

using namespace rdc;

TEST_CASE("binary entropy matches direct evaluation") {
  CHECK(binary_entropy(Probability(0.5)).value() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(binary_entropy(Probability(0.0)).value() == 0.0);
  CHECK(binary_entropy(Probability(1.0)).value() == 0.0);
  CHECK(std::abs(binary_entropy(Probability(0.3)).value() - 0.881290899230693) < 1e-12);
  CHECK(std::abs(binary_entropy(Probability(0.2)).value() - 0.721928094887362) < 1e-12);
  CHECK(std::abs(binary_entropy(Probability(0.05)).value() - 0.286396957115956) < 1e-12);
  CHECK(std::abs(binary_entropy(Probability(0.62)).value() - 0.9580420222263) < 1e-12);
}

TEST_CASE("binary entropy is symmetric about one half") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double p = unit(rng);
    CHECK(std::abs(binary_entropy(Probability(p)).value() -
                   binary_entropy(Probability(1.0 - p)).value()) < 1e-14);
  }
}

TEST_CASE("inverse binary entropy hits frozen bisection values") {
  CHECK(inverse_binary_entropy(Bits(1.0)).value() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(inverse_binary_entropy(Bits(0.0)).value() == 0.0);
  CHECK(std::abs(inverse_binary_entropy(Bits(0.721928094887362)).value() - 0.2) < 1e-11);
  CHECK(std::abs(inverse_binary_entropy(Bits(0.8)).value() - 0.243003853808954) < 1e-11);
}

TEST_CASE("inverse binary entropy round trip within 1e-10 on a grid") {
  for (int k = 0; k <= 1000; ++k) {
    const double h = static_cast<double>(k) / 1000.0;
    const Probability p = inverse_binary_entropy(Bits(h));
    CHECK(p.value() <= 0.5);
    CHECK(std::abs(binary_entropy(p).value() - h) <= 1e-10);
  }
}

TEST_CASE("inverse binary entropy rejects values above one") {
  CHECK_THROWS_AS(inverse_binary_entropy(Bits(1.1)), std::domain_error);
  // Negative inputs never reach the inverse: the Bits type rejects them.
  CHECK_THROWS_AS(Bits(-0.1), std::invalid_argument);
}

TEST_CASE("binary convolution identities") {
  for (double a : {0.0, 0.1, 0.37, 0.5, 0.9}) {
    CHECK(std::abs(binary_convolution(Probability(a), Probability(0.5)).value() - 0.5) < 1e-15);
  }
  CHECK(std::abs(binary_convolution(Probability(0.2), Probability(0.0)).value() - 0.2) < 1e-15);
  CHECK(std::abs(binary_convolution(Probability(0.3), Probability(0.2)).value() - 0.38) < 1e-15);
}

TEST_CASE("binary convolution is commutative and stays in range") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const double a = unit(rng);
    const double b = unit(rng);
    const double ab = binary_convolution(Probability(a), Probability(b)).value();
    const double ba = binary_convolution(Probability(b), Probability(a)).value();
    CHECK(std::abs(ab - ba) < 1e-15);
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
  }
}

TEST_CASE("task prior matches its closed form") {
  CHECK(std::abs(task_prior_m(SourceModel(0.3, 0.2)).value() - 0.62) < 1e-15);
  for (double q : {0.0, 0.1, 0.3, 0.45}) {
    CHECK(std::abs(task_prior_m(SourceModel(0.0, q)).value() - (1.0 - q)) < 1e-15);
    CHECK(std::abs(task_prior_m(SourceModel(0.5, q)).value() - 0.5) < 1e-15);
  }
}

TEST_CASE("task prior satisfies the exact offset identity") {
  // |m - 1/2| = 2 |q_x - 1/2| |q_s1 - 1/2|, which also forces m >= 1/2 and
  // H_b(m) >= H_b(q_s1) under the standing assumptions.
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> qx_dist(0.0, 0.5);
  std::uniform_real_distribution<double> qs_dist(0.0, 0.4999);
  for (int k = 0; k < 10000; ++k) {
    const double qx = qx_dist(rng);
    const double qs = qs_dist(rng);
    const SourceModel model(qx, qs);
    const double m = task_prior_m(model).value();
    CHECK(std::abs(std::abs(m - 0.5) -
                   2.0 * std::abs(qx - 0.5) * std::abs(qs - 0.5)) <= 1e-15);
    CHECK(m >= 0.5);
    CHECK(binary_entropy(Probability(m)).value() >=
          binary_entropy(Probability(qs)).value() - 1e-12);
  }
}

TEST_CASE("crossover threshold from the classification budget") {
  // (H^-1(c) - q_s1) / (1 - 2 q_s1) with frozen H^-1 values from bisection.
  CHECK(std::abs(mgl_threshold(SourceModel(0.3, 0.2), Bits(0.8)).value() -
                 0.0716730896815898) < 1e-10);
  CHECK(std::abs(mgl_threshold(SourceModel(0.3, 0.0), Bits(0.8)).value() -
                 0.243003853808954) < 1e-10);
  CHECK(std::abs(mgl_threshold(SourceModel(0.2, 0.05), Bits(1.0)).value() - 0.5) < 1e-12);
  // Budgets above one bit saturate at the entropy maximum.
  CHECK(std::abs(mgl_threshold(SourceModel(0.2, 0.05), Bits(1.5)).value() - 0.5) < 1e-12);
}

TEST_CASE("crossover threshold rejects unattainable budgets") {
  const SourceModel model(0.3, 0.2);
  CHECK_THROWS_AS(mgl_threshold(model, Bits(0.5)), FeasibilityError);
  try {
    mgl_threshold(model, Bits(0.5));
  } catch (const FeasibilityError& e) {
    CHECK(std::abs(e.violation() - (0.721928094887362 - 0.5)) < 1e-12);
  }
}

TEST_CASE("probability and bits wrappers validate their range") {
  CHECK(Probability(-1e-13).value() == 0.0);
  CHECK(Probability(1.0 + 1e-13).value() == 1.0);
  CHECK(Bits(-1e-13).value() == 0.0);
  CHECK_THROWS_AS(Probability(-1e-3), std::invalid_argument);
  CHECK_THROWS_AS(Probability(1.001), std::invalid_argument);
  CHECK_THROWS_AS(Bits(-0.5), std::invalid_argument);
}

TEST_CASE("source model enforces the standing assumptions") {
  CHECK_THROWS_AS(SourceModel(0.6, 0.2), std::invalid_argument);
  CHECK_THROWS_AS(SourceModel(0.3, 0.5), std::invalid_argument);
  CHECK_NOTHROW(SourceModel(0.5, 0.499));
  CHECK_NOTHROW(SourceModel(0.0, 0.0));
}

TEST_CASE("raw kernels agree with the typed wrappers") {
  for (double p : {0.01, 0.2, 0.3, 0.5}) {
    CHECK(detail::h2(p) == binary_entropy(Probability(p)).value());
  }
  for (double h : {0.1, 0.5, 0.9}) {
    CHECK(detail::h2_inv(h) == inverse_binary_entropy(Bits(h)).value());
  }
}
