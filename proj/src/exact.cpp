#include "abstain/exact.hpp"

#include <cstdint>
#include <numeric>

namespace abstain {

double VotePMF::total() const { return std::accumulate(mass.begin(), mass.end(), 0.0); }

double VotePMF::mean() const {
  double m = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) m += static_cast<double>(k) * mass[k];
  return m;
}

double VotePMF::variance() const {
  const double mu = mean();
  double v = 0.0;
  for (std::size_t k = 0; k < mass.size(); ++k) {
    const double dk = static_cast<double>(k) - mu;
    v += dk * dk * mass[k];
  }
  return v;
}

VotePMF vote_pmf(std::span<const double> probabilities) {
  VotePMF pmf;
  pmf.mass.reserve(probabilities.size() + 1);
  pmf.mass.push_back(1.0);
  for (double p : probabilities) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("participation probability outside [0, 1]");
    pmf.mass.push_back(0.0);
    // In place, from the top so each entry still holds the previous round.
    for (std::size_t k = pmf.mass.size() - 1; k > 0; --k)
      pmf.mass[k] = pmf.mass[k] * (1.0 - p) + pmf.mass[k - 1] * p;
    pmf.mass[0] *= 1.0 - p;
  }
  return pmf;
}

WinProbabilities win_probabilities(const VotePMF& left, const VotePMF& right) {
  // below[k] = P(R < k)
  double p_left = 0.0;
  double p_tie = 0.0;
  double below = 0.0;
  for (std::size_t k = 0; k < left.mass.size(); ++k) {
    const double r_at = k < right.mass.size() ? right.mass[k] : 0.0;
    p_left += left.mass[k] * below;
    p_tie += left.mass[k] * r_at;
    below += r_at;
  }
  WinProbabilities w;
  w.left = p_left + 0.5 * p_tie;
  w.right = 1.0 - w.left;
  return w;
}

namespace {

struct SplitProbabilities {
  std::vector<double> left;
  std::vector<double> right;
};

SplitProbabilities split(std::span<const VoterProfile> voters) {
  SplitProbabilities s;
  for (const auto& v : voters) {
    if (v.preferred == Preference::left) s.left.push_back(v.participation);
    if (v.preferred == Preference::right) s.right.push_back(v.participation);
  }
  return s;
}

}  // namespace

WinProbabilities win_probabilities(std::span<const VoterProfile> voters) {
  const auto s = split(voters);
  return win_probabilities(vote_pmf(s.left), vote_pmf(s.right));
}

WinProbabilities win_probabilities(const LineElection& e, Beta beta) {
  return win_probabilities(profiles(e, beta));
}

DistortionReport expected_distortion(const LineElection& e, Beta beta) {
  const auto voters = profiles(e, beta);
  return assemble_report(social_costs(e), expected_votes(voters), win_probabilities(voters));
}

OracleResult enumerate_oracle(std::span<const VoterProfile> voters, const Distortions& d) {
  const std::size_t n = voters.size();
  if (n > kOracleMaxVoters) throw SizeError("enumeration oracle is limited to 20 voters");

  double p_left = 0.0;
  const std::uint32_t outcomes = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < outcomes; ++mask) {
    double prob = 1.0;
    int margin = 0;
    for (std::size_t i = 0; i < n && prob > 0.0; ++i) {
      const bool votes = (mask >> i) & 1u;
      const auto& v = voters[i];
      prob *= votes ? v.participation : 1.0 - v.participation;
      if (votes && v.preferred == Preference::left) ++margin;
      if (votes && v.preferred == Preference::right) --margin;
    }
    if (margin > 0)
      p_left += prob;
    else if (margin == 0)
      p_left += 0.5 * prob;
  }

  OracleResult r;
  r.win.left = p_left;
  r.win.right = 1.0 - p_left;
  r.expected_distortion = expected_distortion(d, r.win);
  return r;
}

OracleResult enumerate_oracle(const LineElection& e, Beta beta) {
  if (e.size() > kOracleMaxVoters) throw SizeError("enumeration oracle is limited to 20 voters");
  return enumerate_oracle(profiles(e, beta), distortions(social_costs(e)));
}

}  // namespace abstain
