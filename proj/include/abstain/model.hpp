#pragma once

// Two-candidate elections on the line with distance-driven abstention.
//
// Candidates sit at 0 (left) and 1 (right). A voter at x prefers the closer
// candidate and casts a sincere vote with probability
//
//     (|d_near - d_far| / (d_near + d_far))^beta,
//
// abstaining otherwise. Everything here is a pure function of immutable values.

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace abstain {

enum class Candidate { left, right };
enum class Preference { left, right, indifferent };
// Expected-winner result; ties are reported, never broken.
enum class Outcome { left, right, tie };
enum class Region { A, B, C, D };

std::string_view to_string(Candidate c);
std::string_view to_string(Preference p);
std::string_view to_string(Outcome o);
std::string_view to_string(Region r);

inline Candidate other(Candidate c) {
  return c == Candidate::left ? Candidate::right : Candidate::left;
}

// Participation exponent, always in [0, 1].
class Beta {
 public:
  explicit Beta(double value);
  double value() const { return value_; }

 private:
  double value_;
};

// Voter positions in units of the candidate gap. Non-empty, all finite.
class LineElection {
 public:
  explicit LineElection(std::vector<double> positions);

  std::span<const double> positions() const { return positions_; }
  double operator[](std::size_t i) const { return positions_.at(i); }
  std::size_t size() const { return positions_.size(); }

  // Copy with voter i relocated to x.
  LineElection moved(std::size_t i, double x) const;
  // Reflection x -> 1 - x, which swaps the roles of the two candidates.
  LineElection mirrored() const;

  friend bool operator==(const LineElection&, const LineElection&) = default;

 private:
  std::vector<double> positions_;
};

struct VoterProfile {
  Preference preferred = Preference::indifferent;
  double participation = 0.0;
};

struct SocialCosts {
  double left = 0.0;
  double right = 0.0;
};

struct ExpectedVotes {
  double left = 0.0;
  double right = 0.0;
};

struct WinProbabilities {
  double left = 0.5;
  double right = 0.5;
};

struct Distortions {
  Candidate optimal = Candidate::left;
  double left = 1.0;   // may be +infinity
  double right = 1.0;  // may be +infinity

  double of(Candidate c) const { return c == Candidate::left ? left : right; }
};

struct DistortionReport {
  SocialCosts costs;
  Distortions distortion;
  ExpectedVotes expected_votes;
  Outcome expected_winner = Outcome::tie;
  WinProbabilities win;
  double expected_distortion = 1.0;
};

// Absolute tolerance (scaled by the total expected turnout when that exceeds
// one) under which two expected vote counts are reported as a tie.
inline constexpr double kTieTolerance = 1e-12;

// Throws std::domain_error for negative distances or when both are zero.
double participation_probability(double d_near, double d_far, Beta beta);

VoterProfile profile(double x, Beta beta);
std::vector<VoterProfile> profiles(const LineElection& e, Beta beta);

// Half-open convention: A=(-inf,0), B=[0,1/2), C=[1/2,1), D=[1,inf).
Region region_of(double x);

SocialCosts social_costs(const LineElection& e);

ExpectedVotes expected_votes(std::span<const VoterProfile> voters);
ExpectedVotes expected_votes(const LineElection& e, Beta beta);

Outcome winner_of(const ExpectedVotes& votes);
Outcome expected_winner(const LineElection& e, Beta beta);

// Both costs zero gives distortion 1 for both; a zero optimum against a
// positive alternative gives +infinity for the alternative.
Distortions distortions(const SocialCosts& costs);

// P_left * D(left) + P_right * D(right); a zero-probability term never
// contributes, even when its distortion is infinite.
double expected_distortion(const Distortions& d, const WinProbabilities& win);

DistortionReport assemble_report(const SocialCosts& costs, const ExpectedVotes& votes,
                                 const WinProbabilities& win);

// Throws std::invalid_argument when the win probabilities do not sum to one.
DistortionReport distortion_report(const LineElection& e, Beta beta, const WinProbabilities& win);

}  // namespace abstain
