#include <gtest/gtest.h>

#include <cmath>

#include "abstain/exact.hpp"
#include "abstain/montecarlo.hpp"

using namespace abstain;

namespace {

const LineElection kSmall({-0.3, 0.1, 0.2, 0.45, 0.7, 0.8, 1.2, 1.9, 0.05});

}  // namespace

TEST(Hoeffding, FormulaAndValidation) {
  EXPECT_NEAR(hoeffding_half_width(1000, 0.95), std::sqrt(std::log(2.0 / 0.05) / 2000.0), 1e-15);
  EXPECT_THROW(hoeffding_half_width(0, 0.95), std::invalid_argument);
  EXPECT_THROW(hoeffding_half_width(10, 1.0), std::invalid_argument);
  EXPECT_THROW(hoeffding_half_width(10, 0.0), std::invalid_argument);
}

TEST(Hoeffding, DoublingSamplesHalvesSquaredWidth) {
  for (std::uint64_t n : {10ULL, 1000ULL, 123457ULL}) {
    const double w1 = hoeffding_half_width(n, 0.9), w2 = hoeffding_half_width(2 * n, 0.9);
    EXPECT_LE(w2 * w2, w1 * w1 / 2 * (1 + 1e-12));
  }
}

TEST(Simulate, DeterministicForFixedSeed) {
  const McConfig cfg{5000, 42, 0.95, 1};
  const auto a = simulate(kSmall, Beta(0.6), cfg), b = simulate(kSmall, Beta(0.6), cfg);
  EXPECT_EQ(a.p_left_hat, b.p_left_hat);
  EXPECT_EQ(a.expected_distortion_hat, b.expected_distortion_hat);
  const McConfig other{5000, 43, 0.95, 1};
  EXPECT_NE(simulate(kSmall, Beta(0.6), other).p_left_hat, a.p_left_hat);
}

TEST(Simulate, MultiWorkerDeterministic) {
  const McConfig cfg{20000, 9, 0.95, 4};
  const auto a = simulate(kSmall, Beta(0.3), cfg), b = simulate(kSmall, Beta(0.3), cfg);
  EXPECT_EQ(a.p_left_hat, b.p_left_hat);
  EXPECT_EQ(a.samples, 20000u);
}

TEST(Simulate, HalfWidthScalesWithDistortionRange) {
  const auto e = expected_distortion(kSmall, Beta(1));
  const auto est = simulate(kSmall, Beta(1), {1000, 1, 0.95, 1});
  const double dmax = std::max(e.distortion.left, e.distortion.right);
  EXPECT_DOUBLE_EQ(est.half_width_p, hoeffding_half_width(1000, 0.95));
  EXPECT_DOUBLE_EQ(est.half_width_d, est.half_width_p * (dmax - 1));
}

TEST(Simulate, CoverageOverSeeds) {
  const Beta beta(0.8);
  const double truth = win_probabilities(kSmall, beta).left;
  int covered = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto est = simulate(kSmall, beta, {2000, seed, 0.9, 1});
    if (std::abs(est.p_left_hat - truth) <= est.half_width_p) ++covered;
  }
  EXPECT_GE(covered, 85);
}

TEST(Simulate, InfiniteDistortionRejected) {
  EXPECT_THROW(simulate(LineElection({0.0, 0.0}), Beta(1), {}), std::range_error);
}

TEST(Simulate, InvalidConfiguration) {
  EXPECT_THROW(simulate(kSmall, Beta(1), {0, 1, 0.95, 1}), std::invalid_argument);
  EXPECT_THROW(simulate(kSmall, Beta(1), {10, 1, 0.95, 0}), std::invalid_argument);
}
