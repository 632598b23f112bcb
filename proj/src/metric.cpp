#include "abstain/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "abstain/exact.hpp"

namespace abstain {

MetricElection::MetricElection(std::vector<DistancePair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw std::invalid_argument("an election needs at least one voter");
  for (const auto& p : pairs_) {
    if (!std::isfinite(p.left) || !std::isfinite(p.right) || p.left < 0.0 || p.right < 0.0)
      throw std::invalid_argument("distances must be finite and nonnegative");
    if (p.left + p.right < 1.0 - kTriangleTolerance)
      throw std::invalid_argument("triangle inequality violated: d_left + d_right < 1");
  }
}

MetricElection MetricElection::swapped() const {
  auto next = pairs_;
  for (auto& p : next) std::swap(p.left, p.right);
  return MetricElection(std::move(next));
}

double gamma(const DistancePair& p) {
  if (p.left == 0.0 && p.right == 0.0) throw std::domain_error("gamma undefined for a voter at both candidates");
  if (p.right == 0.0) return std::numeric_limits<double>::infinity();
  return p.left / p.right;
}

VoterProfile profile(const DistancePair& p, Beta beta) {
  VoterProfile v;
  if (p.left == p.right) return v;
  v.preferred = p.left < p.right ? Preference::left : Preference::right;
  v.participation = participation_probability(std::min(p.left, p.right), std::max(p.left, p.right), beta);
  return v;
}

std::vector<VoterProfile> profiles(const MetricElection& m, Beta beta) {
  std::vector<VoterProfile> out;
  out.reserve(m.size());
  for (const auto& p : m.pairs()) out.push_back(profile(p, beta));
  return out;
}

SocialCosts social_costs(const MetricElection& m) {
  SocialCosts sc;
  for (const auto& p : m.pairs()) {
    sc.left += p.left;
    sc.right += p.right;
  }
  return sc;
}

LineReduction reduce_to_line(const MetricElection& m) {
  const auto sc = social_costs(m);
  const bool swap = sc.left < sc.right;
  const MetricElection work = swap ? m.swapped() : m;
  const auto costs = swap ? SocialCosts{sc.right, sc.left} : sc;
  // Social cost is abstention-independent; right is optimal here.
  const double threshold = costs.left / costs.right;

  std::vector<double> positions;
  positions.reserve(work.size());
  for (const auto& p : work.pairs()) {
    const double g = gamma(p);
    if (std::isinf(g))
      positions.push_back(1.0);
    else if (g <= threshold)
      positions.push_back(g / (g + 1.0));
    else
      positions.push_back(g / (g - 1.0));
  }
  return {LineElection(std::move(positions)), swap, threshold};
}

DistortionReport metric_report(const MetricElection& m, Beta beta) {
  const auto voters = profiles(m, beta);
  return assemble_report(social_costs(m), expected_votes(voters), win_probabilities(voters));
}

}  // namespace abstain
