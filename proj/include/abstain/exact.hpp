#pragma once

// Exact win probabilities via the Poisson-binomial law of each candidate's
// vote count, plus a brute-force 2^n enumeration used as an independent check.

#include <span>
#include <stdexcept>
#include <vector>

#include "abstain/model.hpp"

namespace abstain {

class SizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

// mass[k] = P(exactly k successes), k = 0..m.
struct VotePMF {
  std::vector<double> mass;

  double total() const;
  double mean() const;
  double variance() const;
};

// O(m^2) iterative convolution of independent Bernoulli indicators.
// Throws std::domain_error on a probability outside [0, 1].
VotePMF vote_pmf(std::span<const double> probabilities);

// P_left = P(L > R) + P(L = R) / 2, ties settled by a fair coin.
WinProbabilities win_probabilities(const VotePMF& left, const VotePMF& right);
WinProbabilities win_probabilities(std::span<const VoterProfile> voters);
WinProbabilities win_probabilities(const LineElection& e, Beta beta);

DistortionReport expected_distortion(const LineElection& e, Beta beta);

struct OracleResult {
  WinProbabilities win;
  double expected_distortion = 1.0;
};

inline constexpr std::size_t kOracleMaxVoters = 20;

// Enumerates every participation outcome. Throws SizeError above 20 voters.
OracleResult enumerate_oracle(std::span<const VoterProfile> voters, const Distortions& d);
OracleResult enumerate_oracle(const LineElection& e, Beta beta);

}  // namespace abstain
