#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "abstain/displace.hpp"
#include "abstain/exact.hpp"
#include "abstain/montecarlo.hpp"
#include "abstain/suites.hpp"
#include "abstain/worstcase.hpp"

using namespace abstain;

namespace {

// Brute-force maximum over a full (q_b, x_b, x_d) lattice, with the winner
// constraint checked directly.
double lattice_maximum(double beta, int n) {
  double best = 1.0;
  for (int a = 1; a <= n; ++a) {
    const double q = static_cast<double>(a) / n;
    for (int b = 0; b < n; ++b) {
      const double xb = 0.5 * b / n;
      for (int c = 0; c <= 4 * n; ++c) {
        const double xd = 1.0 + 3.0 * c / (4 * n);
        const double left = std::pow(1 - 2 * xb, beta) * q;
        const double right = (1 - q) / std::pow(2 * xd - 1, beta);
        if (left < right) continue;
        const double den = q * (1 - xb) + (1 - q) * (xd - 1);
        if (den <= 0) continue;
        best = std::max(best, (q * xb + (1 - q) * xd) / den);
      }
    }
  }
  return best;
}

}  // namespace

TEST(Objective, DomainAndValues) {
  EXPECT_DOUBLE_EQ(cp2_objective(0.25, 0.2, 2.0), 1.55 / 0.95);
  EXPECT_THROW(cp2_objective(1.2, 0.0, 2.0), std::domain_error);
  EXPECT_THROW(cp2_objective(0.5, 0.6, 2.0), std::domain_error);
  EXPECT_THROW(cp2_objective(0.5, 0.0, 0.9), std::domain_error);
  EXPECT_THROW(cp2_objective(0.0, 0.0, 1.0), std::domain_error);
}

TEST(Objective, BindingCurveMakesSlackZero) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> uq(0.05, 0.95), ux(0.0, 0.45), ub(0.05, 1.0);
  for (int k = 0; k < 1000; ++k) {
    const Beta beta(ub(rng));
    const double q = uq(rng), x = ux(rng);
    const double xd = binding_xd(q, x, beta);
    if (xd > 1.0) EXPECT_NEAR(cp2_slack(q, x, xd, beta), 0.0, 1e-12);
    else EXPECT_GE(cp2_slack(q, x, xd, beta), 0.0);
  }
  EXPECT_THROW(binding_xd(0.5, 0.1, Beta(0)), std::domain_error);
}

TEST(Solver, BetaOneMatchesClosedForm) {
  const auto s = solve_cp2(Beta(1));
  const double q = 1 / (2 + std::sqrt(2.0)), xd = (2 + std::sqrt(2.0)) / 2;
  const double closed = (1 - q) * xd / (q + (1 - q) * (xd - 1));
  EXPECT_NEAR(s.value, closed, 1e-6);
  EXPECT_NEAR(s.q_b, q, 1e-3);
  EXPECT_NEAR(s.x_b, 0.0, 1e-3);
  EXPECT_NEAR(s.x_d, xd, 1e-3);
  EXPECT_TRUE(s.attained);
}

TEST(Solver, BetaZeroIsSupremumNearThree) {
  const auto s = solve_cp2(Beta(0));
  EXPECT_FALSE(s.attained);
  EXPECT_GE(s.value, 2.99);
  EXPECT_LT(s.value, 3.0);
}

TEST(Solver, AtLeastBruteForceLattice) {
  for (double b : {0.2, 0.5, 0.8, 1.0}) {
    const auto s = solve_cp2(Beta(b));
    EXPECT_GE(s.value, lattice_maximum(b, 60) - 1e-9) << "beta " << b;
  }
}

TEST(Solver, LocallyOptimalAndFeasible) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double b : {0.3, 0.705, 1.0}) {
    const Beta beta(b);
    const auto s = solve_cp2(beta);
    EXPECT_GE(cp2_slack(s.q_b, s.x_b, s.x_d, beta), -1e-9);
    for (int k = 0; k < 500; ++k) {
      const double q = std::clamp(s.q_b + 1e-3 * u(rng), 1e-9, 1.0);
      const double x = std::clamp(s.x_b + 1e-3 * u(rng), 0.0, 0.5 - 1e-6);
      const double xd = 1.0 + 1e-2 * std::abs(u(rng)) + binding_xd(q, x, beta) - 1.0;
      EXPECT_LE(cp2_objective(q, x, xd), s.value + 1e-9);
    }
  }
}

TEST(Solver, MarginLowersValueAndIsContinuous) {
  const Beta beta(0.6);
  const double base = solve_cp2(beta).value;
  double previous = base;
  for (double eps : {1e-4, 1e-2, 0.1, 0.5}) {
    const double v = solve_cp2_margin(beta, eps).value;
    EXPECT_LE(v, previous + 1e-9);
    previous = v;
  }
  EXPECT_NEAR(solve_cp2_margin(beta, 1e-7).value, base, 1e-4);
  EXPECT_THROW(solve_cp2_margin(beta, -0.1), std::invalid_argument);
  EXPECT_THROW(solve_cp2(beta, {32, 1e-6}), std::invalid_argument);
}

TEST(Solver, WitnessElectionRealizesValue) {
  const Beta beta(1);
  const auto s = solve_cp2(beta);
  const auto e = witness_election(s, 10000);
  EXPECT_NE(expected_winner(e, beta), Outcome::right);
  EXPECT_NEAR(distortions(social_costs(e)).left, s.value, 1e-3);
}

TEST(Solver, UpperBoundsRandomElections) {
  auto rng = make_stream(12, 0);
  for (double b : {0.0, 0.4, 1.0}) {
    const Beta beta(b);
    const double dstar = solve_cp2(beta).value;
    for (int k = 0; k < 200; ++k) {
      const auto e = random_election(rng, beta, Configuration::expected_winner, {}, 12);
      if (!e) continue;
      EXPECT_LE(winner_distortion(*e, beta), dstar + 1e-6) << "beta " << b;
    }
  }
}

TEST(Sweep, CsvHasHeaderAndRows) {
  const std::vector<double> betas{0.25, 1.0};
  std::ostringstream os;
  write_sweep_csv(os, sweep_beta(betas));
  std::string line;
  std::istringstream in(os.str());
  std::getline(in, line);
  EXPECT_EQ(line, "beta,dstar,q_b,x_b,x_d,attained");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 2);
}

TEST(Phi, ValuesAndPole) {
  EXPECT_NEAR(phi(1.0), 8.0 / std::pow(1 - std::sqrt(2.0), 2), 1e-12);
  EXPECT_GE(phi(0.1), 147.5);
  EXPECT_LE(phi(0.1), 148.5);
  EXPECT_THROW(phi(0.0), std::domain_error);
  EXPECT_THROW(phi((1 + std::sqrt(5.0)) / 2), std::domain_error);
}

TEST(Bound, ChebyshevControlsUpsetProbability) {
  const auto instances = generate_bound_instances(0.1, Beta(1), 20, 4);
  for (const auto& inst : instances) {
    const auto m = vote_moments(inst.election, Beta(1));
    const double gap = m.mean_right - m.mean_left;
    if (gap <= 0) continue;
    const double p_left = win_probabilities(inst.election, Beta(1)).left;
    EXPECT_LE(p_left, (m.var_left + m.var_right) / (gap * gap) + 1e-12);
  }
}

TEST(Bound, GeneratedInstancesMeetGate) {
  const double gate = phi(0.1);
  const auto instances = generate_bound_instances(0.1, Beta(1), 30, 6);
  ASSERT_EQ(instances.size(), 30u);
  for (const auto& inst : instances) {
    const auto v = expected_votes(inst.election, Beta(1));
    EXPECT_GE(v.left, gate);
    EXPECT_GE(v.right, gate);
    const auto c = social_costs(inst.election);
    EXPECT_LT(c.right, c.left);
  }
}

TEST(Bound, VerifierSkipsSmallElectionsAndPassesExactOnes) {
  const std::vector<LineElection> small{LineElection({0.1, 1.5})};
  const auto checks = verify_theorem41(0.1, Beta(1), small);
  ASSERT_EQ(checks.size(), 1u);
  EXPECT_EQ(checks[0].status, CheckStatus::skipped);

  const auto instances = generate_bound_instances(0.1, Beta(1), 5, 2);
  std::vector<LineElection> es;
  for (const auto& i : instances) es.push_back(i.election);
  BoundOptions exact;
  exact.evaluation = Evaluation::exact;
  for (const auto& c : verify_theorem41(0.1, Beta(1), es, exact)) {
    EXPECT_EQ(c.status, CheckStatus::pass);
    EXPECT_FALSE(c.monte_carlo);
    EXPECT_EQ(c.half_width, 0.0);
  }
}
