#pragma once

// Elections in an arbitrary metric, described only by each voter's distances
// to the two candidates (candidate separation 1), and their reduction to the
// line.

#include <vector>

#include "abstain/model.hpp"

namespace abstain {

struct DistancePair {
  double left = 0.0;
  double right = 0.0;

  friend bool operator==(const DistancePair&, const DistancePair&) = default;
};

// Slack allowed on the triangle inequality d_left + d_right >= 1, so that
// distances computed in floating point from actual geometry are accepted.
inline constexpr double kTriangleTolerance = 1e-12;

class MetricElection {
 public:
  // Throws std::invalid_argument on an empty list, a negative or non-finite
  // distance, or a triangle-inequality violation.
  explicit MetricElection(std::vector<DistancePair> pairs);

  const std::vector<DistancePair>& pairs() const { return pairs_; }
  std::size_t size() const { return pairs_.size(); }

  // Relabels the candidates.
  MetricElection swapped() const;

 private:
  std::vector<DistancePair> pairs_;
};

// d_left / d_right; +infinity when d_right = 0. Throws std::domain_error when
// both are zero.
double gamma(const DistancePair& p);

VoterProfile profile(const DistancePair& p, Beta beta);
std::vector<VoterProfile> profiles(const MetricElection& m, Beta beta);
SocialCosts social_costs(const MetricElection& m);

struct LineReduction {
  LineElection line;
  bool swapped = false;  // candidates were relabeled so that right is optimal
  double threshold = 1.0;  // D(left) of the (relabeled) metric election
};

// Voters with gamma <= D(left) go to gamma / (gamma + 1), the rest to
// gamma / (gamma - 1); gamma = +infinity goes to 1. Every voter keeps its
// preferred candidate and participation probability.
LineReduction reduce_to_line(const MetricElection& m);

// Report computed directly on the distance pairs with the exact engine.
DistortionReport metric_report(const MetricElection& m, Beta beta);

}  // namespace abstain
