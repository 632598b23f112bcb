#include "abstain/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace abstain {

std::string_view to_string(Candidate c) { return c == Candidate::left ? "left" : "right"; }

std::string_view to_string(Preference p) {
  switch (p) {
    case Preference::left: return "left";
    case Preference::right: return "right";
    case Preference::indifferent: return "indifferent";
  }
  return "?";
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::left: return "left";
    case Outcome::right: return "right";
    case Outcome::tie: return "tie";
  }
  return "?";
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::A: return "A";
    case Region::B: return "B";
    case Region::C: return "C";
    case Region::D: return "D";
  }
  return "?";
}

Beta::Beta(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw std::domain_error("beta must lie in [0, 1], got " + std::to_string(value));
}

LineElection::LineElection(std::vector<double> positions) : positions_(std::move(positions)) {
  if (positions_.empty()) throw std::invalid_argument("an election needs at least one voter");
  for (double x : positions_)
    if (!std::isfinite(x)) throw std::invalid_argument("voter positions must be finite");
}

LineElection LineElection::moved(std::size_t i, double x) const {
  auto next = positions_;
  next.at(i) = x;
  return LineElection(std::move(next));
}

LineElection LineElection::mirrored() const {
  auto next = positions_;
  for (double& x : next) x = 1.0 - x;
  return LineElection(std::move(next));
}

double participation_probability(double d_near, double d_far, Beta beta) {
  if (d_near < 0.0 || d_far < 0.0) throw std::domain_error("distances must be nonnegative");
  if (d_near == 0.0 && d_far == 0.0) throw std::domain_error("distances cannot both be zero");
  // No strict preference, no sincere vote (also for beta = 0).
  if (d_near == d_far) return 0.0;
  const double ratio = std::abs(d_near - d_far) / (d_near + d_far);
  return std::pow(ratio, beta.value());
}

VoterProfile profile(double x, Beta beta) {
  const double d_left = std::abs(x);
  const double d_right = std::abs(x - 1.0);
  VoterProfile p;
  if (x < 0.5)
    p.preferred = Preference::left;
  else if (x > 0.5)
    p.preferred = Preference::right;
  else
    return p;
  p.participation = participation_probability(std::min(d_left, d_right), std::max(d_left, d_right), beta);
  return p;
}

std::vector<VoterProfile> profiles(const LineElection& e, Beta beta) {
  std::vector<VoterProfile> out;
  out.reserve(e.size());
  for (double x : e.positions()) out.push_back(profile(x, beta));
  return out;
}

Region region_of(double x) {
  if (x < 0.0) return Region::A;
  if (x < 0.5) return Region::B;
  if (x < 1.0) return Region::C;
  return Region::D;
}

SocialCosts social_costs(const LineElection& e) {
  SocialCosts sc;
  for (double x : e.positions()) {
    sc.left += std::abs(x);
    sc.right += std::abs(x - 1.0);
  }
  return sc;
}

ExpectedVotes expected_votes(std::span<const VoterProfile> voters) {
  ExpectedVotes v;
  for (const auto& p : voters) {
    if (p.preferred == Preference::left) v.left += p.participation;
    if (p.preferred == Preference::right) v.right += p.participation;
  }
  return v;
}

ExpectedVotes expected_votes(const LineElection& e, Beta beta) {
  return expected_votes(profiles(e, beta));
}

Outcome winner_of(const ExpectedVotes& votes) {
  const double scale = std::max(1.0, votes.left + votes.right);
  if (std::abs(votes.left - votes.right) <= kTieTolerance * scale) return Outcome::tie;
  return votes.left > votes.right ? Outcome::left : Outcome::right;
}

Outcome expected_winner(const LineElection& e, Beta beta) { return winner_of(expected_votes(e, beta)); }

Distortions distortions(const SocialCosts& costs) {
  Distortions d;
  d.optimal = costs.left <= costs.right ? Candidate::left : Candidate::right;
  const double best = std::min(costs.left, costs.right);
  if (best == 0.0) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    d.left = costs.left == 0.0 ? 1.0 : inf;
    d.right = costs.right == 0.0 ? 1.0 : inf;
    return d;
  }
  d.left = costs.left / best;
  d.right = costs.right / best;
  // Exactly 1 for the optimum, not merely within rounding.
  (d.optimal == Candidate::left ? d.left : d.right) = 1.0;
  return d;
}

double expected_distortion(const Distortions& d, const WinProbabilities& win) {
  double total = 0.0;
  if (win.left > 0.0) total += win.left * d.left;
  if (win.right > 0.0) total += win.right * d.right;
  return total;
}

DistortionReport assemble_report(const SocialCosts& costs, const ExpectedVotes& votes,
                                 const WinProbabilities& win) {
  DistortionReport r;
  r.costs = costs;
  r.distortion = distortions(costs);
  r.expected_votes = votes;
  r.expected_winner = winner_of(votes);
  r.win = win;
  r.expected_distortion = expected_distortion(r.distortion, win);
  return r;
}

DistortionReport distortion_report(const LineElection& e, Beta beta, const WinProbabilities& win) {
  if (win.left < 0.0 || win.right < 0.0 || std::abs(win.left + win.right - 1.0) > 1e-12)
    throw std::invalid_argument("win probabilities must be nonnegative and sum to one");
  return assemble_report(social_costs(e), expected_votes(e, beta), win);
}

}  // namespace abstain
