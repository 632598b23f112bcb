#pragma once

// Worst-case distortion of the expected winner and the large-election bound
// on the expected distortion.
//
// With all voters at two points, a fraction q_b at x_b in [0, 1/2] and the
// rest at x_d >= 1, left is the expected winner when
//
//     (1 - 2 x_b)^beta q_b >= (1 + eps) (1 - q_b) / (2 x_d - 1)^beta
//
// and its distortion is
//
//     (q_b x_b + (1 - q_b) x_d) / (q_b (1 - x_b) + (1 - q_b)(x_d - 1)).
//
// The ratio falls as x_d grows past the point where the constraint binds, so
// the search runs over (q_b, x_b) with x_d placed on the binding curve.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "abstain/model.hpp"
#include "abstain/montecarlo.hpp"

namespace abstain {

struct GridOptions {
  int points = 256;         // per axis, at least 64
  double tolerance = 1e-6;  // parameter resolution of the local refinement
};

struct WorstCaseSolution {
  double beta = 1.0;
  double epsilon = 0.0;
  double q_b = 1.0;
  double x_b = 0.0;
  double x_d = 1.0;
  double value = 1.0;
  // False when the value is a supremum approached on the boundary of the
  // feasible set (beta = 0 needs x_b -> 1/2, where voters abstain).
  bool attained = true;
};

// Throws std::domain_error outside the box or for a nonpositive denominator.
double cp2_objective(double q_b, double x_b, double x_d);

// Smallest x_d >= 1 satisfying the winner constraint, +infinity when none
// exists. Throws std::domain_error for beta = 0 (the constraint does not
// involve x_d) or when q_b is outside (0, 1] or x_b outside [0, 1/2].
double binding_xd(double q_b, double x_b, Beta beta, double epsilon = 0.0);

// Left side minus right side of the winner constraint.
double cp2_slack(double q_b, double x_b, double x_d, Beta beta, double epsilon = 0.0);

WorstCaseSolution solve_cp2(Beta beta, const GridOptions& grid = {});
WorstCaseSolution solve_cp2_margin(Beta beta, double epsilon, const GridOptions& grid = {});

// Two-point election realizing a solution with `voters` voters in total.
LineElection witness_election(const WorstCaseSolution& s, int voters);

std::vector<WorstCaseSolution> sweep_beta(std::span<const double> betas, const GridOptions& grid = {});

// Header beta,dstar,q_b,x_b,x_d,attained; 12 significant digits.
void write_sweep_csv(std::ostream& out, std::span<const WorstCaseSolution> rows);

// (a + 1)^3 / (a^2 (a - sqrt(a + 1))^2). Throws std::domain_error for a <= 0
// and at the pole a = (1 + sqrt 5) / 2.
double phi(double alpha);

struct VoteMoments {
  double mean_left = 0.0;
  double mean_right = 0.0;
  double var_left = 0.0;
  double var_right = 0.0;
};

VoteMoments vote_moments(const LineElection& e, Beta beta);

enum class Evaluation { automatic, exact, monte_carlo };
enum class CheckStatus { pass, fail, skipped, inconclusive };

std::string_view to_string(CheckStatus s);

struct BoundOptions {
  Evaluation evaluation = Evaluation::automatic;
  std::size_t exact_limit = 15;  // automatic: exact up to this many voters
  McConfig mc{20000, 0, 0.999, 1};
  GridOptions grid;
};

struct BoundCheck {
  CheckStatus status = CheckStatus::skipped;
  std::string reason;
  ExpectedVotes votes;
  double expected_distortion = 1.0;
  double half_width = 0.0;  // zero for exact evaluation
  double bound = 0.0;       // (1 + 2 alpha) D*_beta
  double slack = 0.0;       // bound - (estimate + half_width)
  bool monte_carlo = false;
};

// Checks D-bar <= (1 + 2 alpha) D*_beta on each election whose candidates
// both expect at least phi(alpha) votes and whose optimal candidate is right.
// Elections outside that gate are reported as skipped. Monte Carlo verdicts
// require the whole confidence interval on one side of the bound.
std::vector<BoundCheck> verify_theorem41(double alpha, Beta beta, std::span<const LineElection> elections,
                                             const BoundOptions& options = {});

std::vector<BoundCheck> verify_theorem41(double alpha, Beta beta, double dstar,
                                             std::span<const LineElection> elections,
                                             const BoundOptions& options = {});

struct BoundInstance {
  LineElection election;
  std::uint64_t stream = 0;  // generator stream index, for replay
  double x_d = 1.0;
  int d_voters = 0;
  std::vector<double> cloud;  // distinct B positions
  std::vector<int> cloud_counts;
};

// Random elections with a B cloud and a single D point, sized so both
// expected counts clear phi(alpha), with right optimal.
std::vector<BoundInstance> generate_bound_instances(double alpha, Beta beta, std::size_t count,
                                                            std::uint64_t seed);

}  // namespace abstain
