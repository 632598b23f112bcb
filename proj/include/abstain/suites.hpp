#pragma once

// Randomized verification suites over the displacement calculus, the
// canonical forms and the large-election bound.

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "abstain/model.hpp"

namespace abstain {

enum class Configuration {
  expected_winner,      // left is the expected winner, right strictly optimal
  expected_distortion,  // right is optimal and the expected winner
};

struct RegionMinimums {
  int a = 0, b = 0, c = 0, d = 0;  // c counts the open interval (1/2, 1)
};

// Rejection-samples an election in the given configuration with at least the
// requested voters per region and at most max_voters voters. Returns nullopt
// when no such election was found within the attempt budget.
std::optional<LineElection> random_election(std::mt19937_64& rng, Beta beta, Configuration config,
                                            const RegionMinimums& minimums, int max_voters,
                                            int attempts = 2000);

struct SuiteResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;  // no qualifying election generated
  std::string first_failure;

  std::size_t failed() const { return trials - passed - skipped; }
  bool ok() const { return failed() == 0; }
};

enum class Move { a_to_zero, bc_pair, same_region_merge, a_to_b_map, c_to_d_map, d_geometric_merge };

// Applies one randomly chosen instance of the move to each of `trials` random
// elections (random beta, up to max_voters voters) and checks its certificate.
SuiteResult displacement_suite(Move move, std::size_t trials, std::uint64_t seed, int max_voters = 12);

// Canonicalizes random elections in the matching configuration and checks the
// structural postconditions plus the certified nondecrease end to end.
SuiteResult winner_canonical_suite(std::size_t trials, std::uint64_t seed, int max_voters = 12);
SuiteResult distortion_canonical_suite(std::size_t trials, std::uint64_t seed, int max_voters = 12);

// Generated large elections meeting the phi(alpha) gate.
SuiteResult bound_suite(double alpha, Beta beta, std::size_t count, std::uint64_t seed);

}  // namespace abstain
