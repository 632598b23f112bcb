#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "abstain/displace.hpp"
#include "abstain/exact.hpp"
#include "abstain/montecarlo.hpp"
#include "abstain/suites.hpp"

using namespace abstain;

TEST(Moves, AToZero) {
  const LineElection e({-0.7, 0.3, 1.4});
  EXPECT_EQ(move_A_to_zero(e, 0), LineElection({0.0, 0.3, 1.4}));
  EXPECT_THROW(move_A_to_zero(e, 1), RegionError);
}

TEST(Moves, BCPairBothBranches) {
  // x_i <= 1 - x_j: i goes to x_i + x_j - 1/2, j to 1/2.
  const auto near = move_BC_pair(LineElection({0.1, 0.7}), 0, 1);
  EXPECT_NEAR(near[0], 0.3, 1e-15);
  EXPECT_EQ(near[1], 0.5);
  // x_i > 1 - x_j: i goes to x_i + x_j - 1, j to 1.
  const auto far = move_BC_pair(LineElection({0.4, 0.8}), 0, 1);
  EXPECT_NEAR(far[0], 0.2, 1e-15);
  EXPECT_EQ(far[1], 1.0);
  EXPECT_THROW(move_BC_pair(LineElection({0.1, 0.5}), 0, 1), RegionError);
  EXPECT_THROW(move_BC_pair(LineElection({0.6, 0.7}), 0, 1), RegionError);
}

TEST(Moves, BCPairKeepsBothSocialCosts) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> ub(0.0, 0.4999), uc(0.5001, 0.9999);
  for (int k = 0; k < 1000; ++k) {
    const LineElection e({ub(rng), uc(rng)});
    const auto m = move_BC_pair(e, 0, 1);
    const auto c0 = social_costs(e), c1 = social_costs(m);
    EXPECT_NEAR(c0.left, c1.left, 1e-12);
    EXPECT_NEAR(c0.right, c1.right, 1e-12);
  }
}

TEST(Moves, SameRegionMerge) {
  const auto b = merge_same_region(LineElection({0.1, 0.5, 2.0}), 0, 1);
  EXPECT_DOUBLE_EQ(b[0], 0.3);
  EXPECT_DOUBLE_EQ(b[1], 0.3);
  const auto d = merge_same_region(LineElection({0.1, 1.0, 2.0}), 1, 2);
  EXPECT_DOUBLE_EQ(d[1], 1.5);
  EXPECT_THROW(merge_same_region(LineElection({0.1, 2.0}), 0, 1), RegionError);
  EXPECT_THROW(merge_same_region(LineElection({-0.1, 0.2}), 0, 1), RegionError);
}

TEST(Maps, TargetsPreserveParticipationAndPreference) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ua(-50.0, -1e-6), uc(0.5 + 1e-6, 1.0 - 1e-9), ub(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const Beta beta(ub(rng));
    const double a = ua(rng), c = uc(rng);
    const double ta = a_to_b_target(a), tc = c_to_d_target(c);
    EXPECT_EQ(region_of(ta), Region::B);
    EXPECT_GT(tc, 1.0);
    EXPECT_NEAR(profile(ta, beta).participation, profile(a, beta).participation, 1e-12);
    EXPECT_NEAR(profile(tc, beta).participation, profile(c, beta).participation, 1e-12);
    EXPECT_EQ(profile(ta, beta).preferred, Preference::left);
    EXPECT_EQ(profile(tc, beta).preferred, Preference::right);
  }
  EXPECT_THROW(map_A_to_B(LineElection({0.2}), 0), RegionError);
  EXPECT_THROW(map_C_to_D(LineElection({1.0}), 0), RegionError);
}

TEST(Maps, GeometricMergeKeepsBothVoteProbability) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ud(1.0, 20.0), ub(0.0, 1.0);
  for (int k = 0; k < 2000; ++k) {
    const Beta beta(ub(rng));
    const double xi = ud(rng), xj = ud(rng);
    const double t = geometric_merge_point(xi, xj);
    EXPECT_GE(t, std::min(xi, xj) - 1e-12);
    EXPECT_LE(t, std::max(xi, xj) + 1e-12);
    const double both = profile(xi, beta).participation * profile(xj, beta).participation;
    const double pt = profile(t, beta).participation;
    EXPECT_NEAR(pt * pt, both, 1e-12);
  }
}

TEST(Certificates, MediantIdentity) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(1e-3, 100.0);
  for (int k = 0; k < 5000; ++k) {
    double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (a / b <= c / d) std::swap(a, c), std::swap(b, d);
    if (a / b == c / d) continue;
    EXPECT_LT((a + c) / (b + d), a / b);
    EXPECT_GT((a + c) / (b + d), c / d);
  }
}

TEST(Certificates, AToZeroOnKnownElection) {
  const LineElection e({-0.5, 0.2, 0.2, 0.2, 1.5, 2.0});
  ASSERT_EQ(expected_winner(e, Beta(1)), Outcome::left);
  const auto cert = certify(e, move_A_to_zero(e, 0), Beta(1), Validity::expected_winner);
  EXPECT_TRUE(cert.winner_preserved());
  EXPECT_TRUE(cert.passed());
  EXPECT_GE(cert.metric_after, cert.metric_before);
}

// A voter in the interior of C and its participation-preserving image in D:
// the image raises the right candidate's social cost less than it raises the
// optimum's, so the expected distortion drops. No image in D recovers it.
TEST(Certificates, CToDMapCanLowerExpectedDistortion) {
  const LineElection e({1.2, 0.55});
  const Beta beta(1);
  ASSERT_EQ(expected_winner(e, beta), Outcome::right);
  ASSERT_EQ(distortions(social_costs(e)).optimal, Candidate::right);
  const double before = expected_distortion(e, beta).expected_distortion;
  const auto cert = certify(e, map_C_to_D(e, 1), beta, Validity::expected_distortion);
  EXPECT_LT(cert.metric_after, cert.metric_before - 1e-3);

  double best = 0.0;
  for (int k = 0; k <= 20000; ++k) {
    const double x = 1.0 + 9.0 * k / 20000.0;
    best = std::max(best, expected_distortion(e.moved(1, x), beta).expected_distortion);
  }
  EXPECT_LT(best, before);
}

TEST(Canonical, WinnerFormOnKnownElection) {
  const LineElection e({-0.2, 0.1, 0.3, 0.3, 0.6, 0.7, 1.3, 1.8, 2.5});
  const Beta beta(1);
  ASSERT_EQ(expected_winner(e, beta), Outcome::left);
  const auto c = canonicalize_expected_winner(e, beta);
  ASSERT_TRUE(c.applied);
  const std::set<double> distinct(c.election.positions().begin(), c.election.positions().end());
  EXPECT_LE(distinct.size(), 2u);
  EXPECT_EQ(expected_winner(c.election, beta), Outcome::left);
  EXPECT_GE(winner_distortion(c.election, beta), winner_distortion(e, beta) - kCertificateTolerance);
  for (const auto& s : c.steps) EXPECT_TRUE(s.certificate.passed());
}

TEST(Canonical, PassThroughOutsideConfiguration) {
  const LineElection e({0.1, 0.2, 0.9});
  const auto c = canonicalize_expected_winner(e, Beta(1));
  EXPECT_FALSE(c.applied);
  EXPECT_EQ(c.election, e);
  EXPECT_FALSE(c.reason.empty());
  EXPECT_FALSE(canonicalize_expected_distortion(e, Beta(1)).applied);
}

TEST(Canonical, DistortionFormWithoutRegionC) {
  const LineElection e({-0.4, 0.2, 1.1, 1.5, 2.0, 3.0});
  const Beta beta(0.5);
  ASSERT_EQ(expected_winner(e, beta), Outcome::right);
  const auto c = canonicalize_expected_distortion(e, beta);
  ASSERT_TRUE(c.applied);
  std::set<double> d_points;
  for (double x : c.election.positions()) {
    EXPECT_FALSE(x < 0.0 || (x > 0.5 && x < 1.0));
    if (x >= 1.0) d_points.insert(x);
  }
  EXPECT_EQ(d_points.size(), 1u);
  EXPECT_GE(expected_distortion(c.election, beta).expected_distortion,
            expected_distortion(e, beta).expected_distortion - kCertificateTolerance);
}

TEST(Canonical, DistortionFormRaisesOnFailedCertificate) {
  EXPECT_THROW(canonicalize_expected_distortion(LineElection({1.2, 0.55}), Beta(1)), CertificateFailure);
}

TEST(Suites, WinnerPreservingMovesPassOnRandomElections) {
  for (auto move : {Move::a_to_zero, Move::bc_pair, Move::same_region_merge}) {
    const auto r = displacement_suite(move, 150, 77);
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
    EXPECT_LT(r.skipped, r.trials / 10) << r.name;
  }
}

TEST(Suites, DistortionMovesOtherThanCToDPass) {
  for (auto move : {Move::a_to_b_map, Move::d_geometric_merge}) {
    const auto r = displacement_suite(move, 150, 78);
    EXPECT_TRUE(r.ok()) << r.name << ": " << r.first_failure;
    EXPECT_LT(r.skipped, r.trials / 10) << r.name;
  }
}

TEST(Suites, GeneratorHonorsConfigurationAndMinimums) {
  auto rng = make_stream(5, 0);
  for (int k = 0; k < 100; ++k) {
    const auto e = random_election(rng, Beta(0.5), Configuration::expected_winner, {1, 1, 1, 1}, 12);
    ASSERT_TRUE(e.has_value());
    EXPECT_EQ(expected_winner(*e, Beta(0.5)), Outcome::left);
    EXPECT_EQ(distortions(social_costs(*e)).optimal, Candidate::right);
    std::set<Region> seen;
    for (double x : e->positions()) seen.insert(region_of(x));
    EXPECT_EQ(seen.size(), 4u);
  }
}
