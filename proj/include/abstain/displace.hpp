#pragma once

// Voter displacements that cannot decrease a worst-case quantity, and the
// canonicalization procedures built from them.
//
// Two validity notions are used. For the expected-winner analysis (left is
// the expected winner, right is optimal) a move must keep the expected winner
// and must not decrease the winner's distortion. For the expected-distortion
// analysis (right is optimal and expected winner) a move must not decrease the
// expected distortion.
//
// Each move is a pure function of the election; validity is certified
// numerically per instance with the exact engine.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "abstain/model.hpp"

namespace abstain {

class RegionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class DisplacementKind {
  a_to_zero,
  bc_pair,
  same_region_merge,
  a_to_b_map,
  c_to_d_map,
  d_geometric_merge,
  snap,  // final collapse of an already-converged cluster
};

std::string_view to_string(DisplacementKind k);

enum class Validity { expected_winner, expected_distortion };

struct Displacement {
  DisplacementKind kind = DisplacementKind::a_to_zero;
  std::vector<std::size_t> voters;
  std::vector<double> targets;
};

inline constexpr double kCertificateTolerance = 1e-9;

struct ValidityCertificate {
  Validity notion = Validity::expected_winner;
  Outcome winner_before = Outcome::tie;
  Outcome winner_after = Outcome::tie;
  // D(expected winner) or expected distortion, depending on the notion.
  double metric_before = 1.0;
  double metric_after = 1.0;

  bool winner_preserved() const { return winner_before == winner_after; }
  bool passed() const;
};

// Distortion of the expected winner; on a tie, the larger distortion.
double winner_distortion(const LineElection& e, Beta beta);

ValidityCertificate certify(const LineElection& before, const LineElection& after, Beta beta,
                            Validity notion);

// Voter i (x < 0) moves to 0.
LineElection move_A_to_zero(const LineElection& e, std::size_t i);

// Voter i in B, voter j in the interior of C. If x_i <= 1 - x_j, i moves to
// x_i + x_j - 1/2 and j to 1/2; otherwise i moves to x_i + x_j - 1 and j to 1.
LineElection move_BC_pair(const LineElection& e, std::size_t i, std::size_t j);

// Both voters in [0, 1/2] or both in [1, inf) move to their midpoint.
LineElection merge_same_region(const LineElection& e, std::size_t i, std::size_t j);

// x < 0 maps to -x / (1 - 2x) in [0, 1/2); participation is unchanged.
LineElection map_A_to_B(const LineElection& e, std::size_t i);
double a_to_b_target(double x);

// 1/2 < x < 1 maps to x / (2x - 1) in (1, inf); participation is unchanged.
LineElection map_C_to_D(const LineElection& e, std::size_t j);
double c_to_d_target(double x);

// Both voters in [1, inf) move to t = (sqrt((2x_i - 1)(2x_j - 1)) + 1) / 2.
LineElection merge_D_geometric(const LineElection& e, std::size_t i, std::size_t j);
double geometric_merge_point(double x_i, double x_j);

class CertificateFailure : public std::runtime_error {
 public:
  CertificateFailure(Displacement move, ValidityCertificate certificate);

  const Displacement& move() const { return move_; }
  const ValidityCertificate& certificate() const { return certificate_; }

 private:
  Displacement move_;
  ValidityCertificate certificate_;
};

struct CanonicalStep {
  Displacement move;
  ValidityCertificate certificate;
};

struct Canonicalization {
  LineElection election;
  bool applied = false;
  std::string reason;  // why the input was passed through, when not applied
  std::vector<CanonicalStep> steps;
};

// Requires left to be the expected winner and right optimal; otherwise the
// input is returned unchanged with applied = false. The result has every
// voter at one point of [0, 1/2) or one point of [1, inf). Throws
// CertificateFailure if any step fails its certificate.
Canonicalization canonicalize_expected_winner(const LineElection& e, Beta beta);

// Requires right to be optimal and the expected winner; otherwise passes the
// input through. Empties the interiors of A and C and collapses D to one
// point. Throws CertificateFailure if any step fails its certificate.
Canonicalization canonicalize_expected_distortion(const LineElection& e, Beta beta);

}  // namespace abstain
