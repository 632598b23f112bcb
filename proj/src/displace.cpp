#include "abstain/displace.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "abstain/exact.hpp"

namespace abstain {

namespace {

constexpr double kMergeTolerance = 1e-12;

bool in_b_closure(double x) { return x >= 0.0 && x <= 0.5; }
bool in_d(double x) { return x >= 1.0; }
bool in_c_interior(double x) { return x > 0.5 && x < 1.0; }

void require(bool ok, const std::string& what) {
  if (!ok) throw RegionError(what);
}

std::string describe(const Displacement& m, const ValidityCertificate& c) {
  std::ostringstream os;
  os.precision(17);
  os << "certificate failed for " << to_string(m.kind) << " on voters";
  for (auto v : m.voters) os << ' ' << v;
  os << ": winner " << to_string(c.winner_before) << " -> " << to_string(c.winner_after) << ", metric "
     << c.metric_before << " -> " << c.metric_after;
  return os.str();
}

// Applies one move, certifies it and records it, throwing on failure.
class Recorder {
 public:
  Recorder(LineElection start, Beta beta, Validity notion)
      : current_(std::move(start)), beta_(beta), notion_(notion) {}

  const LineElection& current() const { return current_; }

  void apply(LineElection next, Displacement move) {
    auto cert = certify(current_, next, beta_, notion_);
    if (!cert.passed()) throw CertificateFailure(std::move(move), cert);
    steps_.push_back({std::move(move), cert});
    current_ = std::move(next);
  }

  std::vector<CanonicalStep> take_steps() { return std::move(steps_); }

 private:
  LineElection current_;
  Beta beta_;
  Validity notion_;
  std::vector<CanonicalStep> steps_;
};

std::vector<std::size_t> indices_where(const LineElection& e, bool (*pred)(double)) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (pred(e[i])) out.push_back(i);
  return out;
}

// Repeatedly merges the two extreme members of a cluster until it spans at
// most kMergeTolerance, then snaps every member to `collapse(cluster)`.
template <typename Merge, typename Collapse>
void collapse_cluster(Recorder& rec, bool (*member)(double), DisplacementKind kind, Merge merge,
                      Collapse collapse) {
  for (;;) {
    const auto idx = indices_where(rec.current(), member);
    if (idx.size() < 2) return;
    const auto& cur = rec.current();
    auto [lo, hi] = std::minmax_element(idx.begin(), idx.end(),
                                        [&](std::size_t a, std::size_t b) { return cur[a] < cur[b]; });
    const std::size_t i = *lo;
    const std::size_t j = *hi;
    if (cur[j] - cur[i] <= kMergeTolerance) {
      if (cur[j] == cur[i]) return;
      std::vector<double> xs;
      for (auto k : idx) xs.push_back(cur[k]);
      const double target = collapse(xs);
      auto positions = std::vector<double>(cur.positions().begin(), cur.positions().end());
      for (auto k : idx) positions[k] = target;
      rec.apply(LineElection(std::move(positions)),
                {DisplacementKind::snap, idx, std::vector<double>(idx.size(), target)});
      return;
    }
    auto next = merge(cur, i, j);
    const double ti = next[i];
    const double tj = next[j];
    rec.apply(std::move(next), {kind, {i, j}, {ti, tj}});
  }
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

// Point whose participation is the geometric mean of the cluster's, which
// is what iterated geometric merges preserve.
double geometric_limit(const std::vector<double>& xs) {
  double log_sum = 0.0;
  for (double x : xs) log_sum += std::log(2.0 * x - 1.0);
  return (std::exp(log_sum / static_cast<double>(xs.size())) + 1.0) / 2.0;
}

}  // namespace

std::string_view to_string(DisplacementKind k) {
  switch (k) {
    case DisplacementKind::a_to_zero: return "A_to_zero";
    case DisplacementKind::bc_pair: return "BC_pair";
    case DisplacementKind::same_region_merge: return "same_region_merge";
    case DisplacementKind::a_to_b_map: return "A_to_B_map";
    case DisplacementKind::c_to_d_map: return "C_to_D_map";
    case DisplacementKind::d_geometric_merge: return "D_geometric_merge";
    case DisplacementKind::snap: return "snap";
  }
  return "?";
}

bool ValidityCertificate::passed() const {
  if (notion == Validity::expected_winner && !winner_preserved()) return false;
  return metric_after >= metric_before - kCertificateTolerance;
}

double winner_distortion(const LineElection& e, Beta beta) {
  const auto d = distortions(social_costs(e));
  switch (expected_winner(e, beta)) {
    case Outcome::left: return d.left;
    case Outcome::right: return d.right;
    case Outcome::tie: return std::max(d.left, d.right);
  }
  return d.left;
}

ValidityCertificate certify(const LineElection& before, const LineElection& after, Beta beta,
                            Validity notion) {
  ValidityCertificate c;
  c.notion = notion;
  c.winner_before = expected_winner(before, beta);
  c.winner_after = expected_winner(after, beta);
  if (notion == Validity::expected_winner) {
    c.metric_before = winner_distortion(before, beta);
    c.metric_after = winner_distortion(after, beta);
  } else {
    c.metric_before = expected_distortion(before, beta).expected_distortion;
    c.metric_after = expected_distortion(after, beta).expected_distortion;
  }
  return c;
}

LineElection move_A_to_zero(const LineElection& e, std::size_t i) {
  require(e[i] < 0.0, "move_A_to_zero: voter is not in region A");
  return e.moved(i, 0.0);
}

LineElection move_BC_pair(const LineElection& e, std::size_t i, std::size_t j) {
  const double xi = e[i];
  const double xj = e[j];
  require(i != j, "move_BC_pair: distinct voters required");
  require(region_of(xi) == Region::B, "move_BC_pair: first voter is not in region B");
  require(in_c_interior(xj), "move_BC_pair: second voter is not in the interior of region C");
  // d(i, left) = x_i against d(j, right) = 1 - x_j. Clamps keep rounding from
  // pushing voter i across 1/2 or below 0.
  if (xi <= 1.0 - xj) return e.moved(i, std::min(xi + xj - 0.5, 0.5)).moved(j, 0.5);
  return e.moved(i, std::max(xi + xj - 1.0, 0.0)).moved(j, 1.0);
}

LineElection merge_same_region(const LineElection& e, std::size_t i, std::size_t j) {
  const double xi = e[i];
  const double xj = e[j];
  require((in_b_closure(xi) && in_b_closure(xj)) || (in_d(xi) && in_d(xj)),
          "merge_same_region: voters must both lie in [0, 1/2] or both in [1, inf)");
  const double mid = xi + (xj - xi) / 2.0;
  return e.moved(i, mid).moved(j, mid);
}

double a_to_b_target(double x) {
  require(x < 0.0, "map_A_to_B: voter is not in region A");
  return -x / (1.0 - 2.0 * x);
}

LineElection map_A_to_B(const LineElection& e, std::size_t i) { return e.moved(i, a_to_b_target(e[i])); }

double c_to_d_target(double x) {
  require(in_c_interior(x), "map_C_to_D: voter is not in the interior of region C");
  return x / (2.0 * x - 1.0);
}

LineElection map_C_to_D(const LineElection& e, std::size_t j) { return e.moved(j, c_to_d_target(e[j])); }

double geometric_merge_point(double x_i, double x_j) {
  require(in_d(x_i) && in_d(x_j), "merge_D_geometric: voters must both lie in region D");
  return (std::sqrt((2.0 * x_i - 1.0) * (2.0 * x_j - 1.0)) + 1.0) / 2.0;
}

LineElection merge_D_geometric(const LineElection& e, std::size_t i, std::size_t j) {
  const double t = geometric_merge_point(e[i], e[j]);
  return e.moved(i, t).moved(j, t);
}

CertificateFailure::CertificateFailure(Displacement move, ValidityCertificate certificate)
    : std::runtime_error(describe(move, certificate)),
      move_(std::move(move)),
      certificate_(certificate) {}

Canonicalization canonicalize_expected_winner(const LineElection& e, Beta beta) {
  const auto d = distortions(social_costs(e));
  const auto winner = expected_winner(e, beta);
  if (winner != Outcome::left || d.optimal != Candidate::right || d.left == d.right)
    return {e, false, "requires left as expected winner and right as the strictly optimal candidate", {}};

  Recorder rec(e, beta, Validity::expected_winner);

  for (auto i : indices_where(e, [](double x) { return x < 0.0; }))
    rec.apply(move_A_to_zero(rec.current(), i), {DisplacementKind::a_to_zero, {i}, {0.0}});

  // C voters by descending position, paired with B voters taken in ascending
  // order (cyclically). A witness that left B is skipped.
  auto c_voters = indices_where(rec.current(), in_c_interior);
  std::stable_sort(c_voters.begin(), c_voters.end(),
                   [&](std::size_t a, std::size_t b) { return rec.current()[a] > rec.current()[b]; });
  auto b_voters = indices_where(rec.current(), [](double x) { return region_of(x) == Region::B; });
  std::stable_sort(b_voters.begin(), b_voters.end(),
                   [&](std::size_t a, std::size_t b) { return rec.current()[a] < rec.current()[b]; });
  for (std::size_t k = 0; k < c_voters.size(); ++k) {
    const std::size_t j = c_voters[k];
    std::size_t i = e.size();
    for (std::size_t s = 0; s < b_voters.size(); ++s) {
      const std::size_t cand = b_voters[(k + s) % b_voters.size()];
      if (region_of(rec.current()[cand]) == Region::B) {
        i = cand;
        break;
      }
    }
    if (i == e.size()) throw RegionError("no region-B witness left for a region-C voter");
    auto next = move_BC_pair(rec.current(), i, j);
    const double ti = next[i];
    const double tj = next[j];
    rec.apply(std::move(next), {DisplacementKind::bc_pair, {i, j}, {ti, tj}});
  }

  // Voters at exactly 1/2 join the B cluster and voters at 1 the D cluster.
  collapse_cluster(rec, in_b_closure, DisplacementKind::same_region_merge, merge_same_region, mean_of);
  collapse_cluster(rec, in_d, DisplacementKind::same_region_merge, merge_same_region, mean_of);

  return {rec.current(), true, {}, rec.take_steps()};
}

Canonicalization canonicalize_expected_distortion(const LineElection& e, Beta beta) {
  const auto d = distortions(social_costs(e));
  const auto winner = expected_winner(e, beta);
  if (winner != Outcome::right || d.optimal != Candidate::right)
    return {e, false, "requires right as both the optimal candidate and the expected winner", {}};

  Recorder rec(e, beta, Validity::expected_distortion);

  for (auto i : indices_where(e, [](double x) { return x < 0.0; })) {
    const double t = a_to_b_target(rec.current()[i]);
    rec.apply(map_A_to_B(rec.current(), i), {DisplacementKind::a_to_b_map, {i}, {t}});
  }
  for (auto j : indices_where(rec.current(), in_c_interior)) {
    const double t = c_to_d_target(rec.current()[j]);
    rec.apply(map_C_to_D(rec.current(), j), {DisplacementKind::c_to_d_map, {j}, {t}});
  }
  collapse_cluster(rec, in_d, DisplacementKind::d_geometric_merge, merge_D_geometric, geometric_limit);

  return {rec.current(), true, {}, rec.take_steps()};
}

}  // namespace abstain
