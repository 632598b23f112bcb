#pragma once

// Sampling estimates of the win probability and expected distortion with
// distribution-free (Hoeffding) confidence intervals.

#include <cstdint>
#include <random>

#include "abstain/model.hpp"

namespace abstain {

struct McConfig {
  std::uint64_t samples = 100000;
  std::uint64_t seed = 0;
  double confidence = 0.95;
  // Disjoint generator streams are derived from (seed, worker index); results
  // depend on the worker count but never on scheduling.
  unsigned workers = 1;
};

struct McEstimate {
  double p_left_hat = 0.0;
  double expected_distortion_hat = 1.0;
  double half_width_p = 0.0;
  double half_width_d = 0.0;
  std::uint64_t samples = 0;
};

// t = sqrt(ln(2 / (1 - confidence)) / (2 n)).
double hoeffding_half_width(std::uint64_t samples, double confidence);

// Generator for one worker stream. Streams for distinct (seed, worker) pairs
// are seeded from decorrelated splitmix64 outputs.
std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t worker);

// One realized majority outcome, ties settled by a fair coin.
Candidate sample_outcome(const LineElection& e, Beta beta, std::mt19937_64& rng);

// Throws std::range_error when either distortion is infinite and
// std::invalid_argument on an invalid configuration.
McEstimate simulate(const LineElection& e, Beta beta, const McConfig& cfg);

}  // namespace abstain
