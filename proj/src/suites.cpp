#include "abstain/suites.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "abstain/csv.hpp"
#include "abstain/displace.hpp"
#include "abstain/exact.hpp"
#include "abstain/montecarlo.hpp"
#include "abstain/worstcase.hpp"

namespace abstain {

namespace {

double draw_in(Region r, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (r) {
    case Region::A: return -(1e-3 + 2.0 * u(rng));
    case Region::B: return 0.5 * u(rng);
    case Region::C: return 0.5 + 0.5 * (1e-6 + (1.0 - 2e-6) * u(rng));
    case Region::D: return 1.0 + 3.0 * u(rng);
  }
  return 0.0;
}

bool matches(const LineElection& e, Beta beta, Configuration config) {
  const auto d = distortions(social_costs(e));
  const auto w = expected_winner(e, beta);
  if (config == Configuration::expected_winner) return w == Outcome::left && d.left > d.right;
  return w == Outcome::right && d.optimal == Candidate::right;
}

std::vector<std::size_t> select(const LineElection& e, bool (*pred)(double)) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < e.size(); ++i)
    if (pred(e[i])) out.push_back(i);
  return out;
}

bool in_a(double x) { return x < 0.0; }
bool in_b(double x) { return x >= 0.0 && x < 0.5; }
bool in_c_interior(double x) { return x > 0.5 && x < 1.0; }
bool in_d(double x) { return x >= 1.0; }

std::size_t pick(const std::vector<std::size_t>& from, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> u(0, from.size() - 1);
  return from[u(rng)];
}

std::string describe(const LineElection& e, double beta, const std::string& what) {
  std::ostringstream os;
  os.precision(17);
  os << what << " [beta=" << beta << ", voters:";
  for (double x : e.positions()) os << ' ' << x;
  os << ']';
  return os.str();
}

void record_failure(SuiteResult& r, const std::string& message) {
  if (r.first_failure.empty()) r.first_failure = message;
}

Beta random_beta(std::mt19937_64& rng) { return Beta(std::uniform_real_distribution<double>(0.0, 1.0)(rng)); }

}  // namespace

std::optional<LineElection> random_election(std::mt19937_64& rng, Beta beta, Configuration config,
                                            const RegionMinimums& minimums, int max_voters, int attempts) {
  const int required = minimums.a + minimums.b + minimums.c + minimums.d;
  if (required > max_voters || max_voters < 1) return std::nullopt;
  std::uniform_int_distribution<int> size(std::max(required, 2), std::max(required, std::max(2, max_voters)));
  std::uniform_int_distribution<int> region(0, 3);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    const int n = size(rng);
    std::vector<double> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int k = 0; k < minimums.a; ++k) xs.push_back(draw_in(Region::A, rng));
    for (int k = 0; k < minimums.b; ++k) xs.push_back(draw_in(Region::B, rng));
    for (int k = 0; k < minimums.c; ++k) xs.push_back(draw_in(Region::C, rng));
    for (int k = 0; k < minimums.d; ++k) xs.push_back(draw_in(Region::D, rng));
    while (static_cast<int>(xs.size()) < n) xs.push_back(draw_in(static_cast<Region>(region(rng)), rng));
    std::shuffle(xs.begin(), xs.end(), rng);
    LineElection e(std::move(xs));
    if (matches(e, beta, config)) return e;
  }
  return std::nullopt;
}

SuiteResult displacement_suite(Move move, std::size_t trials, std::uint64_t seed, int max_voters) {
  SuiteResult r;
  r.trials = trials;
  Configuration config = Configuration::expected_winner;
  Validity notion = Validity::expected_winner;
  RegionMinimums need;
  switch (move) {
    case Move::a_to_zero: r.name = "A_to_zero"; need.a = 1; break;
    case Move::bc_pair: r.name = "BC_pair"; need.b = 1; need.c = 1; break;
    case Move::same_region_merge: r.name = "same_region_merge"; break;
    case Move::a_to_b_map:
      r.name = "A_to_B_map";
      need.a = 1;
      config = Configuration::expected_distortion;
      notion = Validity::expected_distortion;
      break;
    case Move::c_to_d_map:
      r.name = "C_to_D_map";
      need.c = 1;
      config = Configuration::expected_distortion;
      notion = Validity::expected_distortion;
      break;
    case Move::d_geometric_merge:
      r.name = "D_geometric_merge";
      need.d = 2;
      config = Configuration::expected_distortion;
      notion = Validity::expected_distortion;
      break;
  }

  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = make_stream(seed, t);
    const Beta beta = random_beta(rng);
    RegionMinimums want = need;
    const bool merge_in_b = move == Move::same_region_merge && std::bernoulli_distribution(0.5)(rng);
    if (move == Move::same_region_merge) (merge_in_b ? want.b : want.d) = 2;

    const auto e = random_election(rng, beta, config, want, max_voters);
    if (!e) {
      ++r.skipped;
      continue;
    }

    LineElection after = *e;
    switch (move) {
      case Move::a_to_zero: after = move_A_to_zero(*e, pick(select(*e, in_a), rng)); break;
      case Move::bc_pair:
        after = move_BC_pair(*e, pick(select(*e, in_b), rng), pick(select(*e, in_c_interior), rng));
        break;
      case Move::same_region_merge: {
        auto idx = select(*e, merge_in_b ? in_b : in_d);
        std::shuffle(idx.begin(), idx.end(), rng);
        after = merge_same_region(*e, idx[0], idx[1]);
        break;
      }
      case Move::a_to_b_map: after = map_A_to_B(*e, pick(select(*e, in_a), rng)); break;
      case Move::c_to_d_map: after = map_C_to_D(*e, pick(select(*e, in_c_interior), rng)); break;
      case Move::d_geometric_merge: {
        auto idx = select(*e, in_d);
        std::shuffle(idx.begin(), idx.end(), rng);
        after = merge_D_geometric(*e, idx[0], idx[1]);
        break;
      }
    }

    const auto cert = certify(*e, after, beta, notion);
    if (cert.passed()) {
      ++r.passed;
    } else {
      record_failure(r, describe(*e, beta.value(),
                                 "metric " + format_number(cert.metric_before) + " -> " +
                                     format_number(cert.metric_after) + ", winner " +
                                     std::string(to_string(cert.winner_before)) + " -> " +
                                     std::string(to_string(cert.winner_after))));
    }
  }
  return r;
}

SuiteResult winner_canonical_suite(std::size_t trials, std::uint64_t seed, int max_voters) {
  SuiteResult r;
  r.name = "canonical_expected_winner";
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = make_stream(seed, t);
    const Beta beta = random_beta(rng);
    const auto e = random_election(rng, beta, Configuration::expected_winner, {}, max_voters);
    if (!e) {
      ++r.skipped;
      continue;
    }
    try {
      const auto c = canonicalize_expected_winner(*e, beta);
      const std::set<double> distinct(c.election.positions().begin(), c.election.positions().end());
      const double before = winner_distortion(*e, beta);
      const double after = winner_distortion(c.election, beta);
      const bool winner_kept = expected_winner(c.election, beta) == Outcome::left;
      if (c.applied && distinct.size() <= 2 && winner_kept && after >= before - kCertificateTolerance)
        ++r.passed;
      else
        record_failure(r, describe(*e, beta.value(), "canonical form postcondition failed"));
    } catch (const CertificateFailure& ex) {
      record_failure(r, describe(*e, beta.value(), ex.what()));
    }
  }
  return r;
}

SuiteResult distortion_canonical_suite(std::size_t trials, std::uint64_t seed, int max_voters) {
  SuiteResult r;
  r.name = "canonical_expected_distortion";
  r.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    auto rng = make_stream(seed, t);
    const Beta beta = random_beta(rng);
    const auto e = random_election(rng, beta, Configuration::expected_distortion, {}, max_voters);
    if (!e) {
      ++r.skipped;
      continue;
    }
    try {
      const auto c = canonicalize_expected_distortion(*e, beta);
      std::set<double> d_points;
      bool interior_empty = true;
      for (double x : c.election.positions()) {
        if (x < 0.0 || (x > 0.5 && x < 1.0)) interior_empty = false;
        if (x >= 1.0) d_points.insert(x);
      }
      const double before = expected_distortion(*e, beta).expected_distortion;
      const double after = expected_distortion(c.election, beta).expected_distortion;
      if (c.applied && interior_empty && d_points.size() <= 1 && after >= before - kCertificateTolerance)
        ++r.passed;
      else
        record_failure(r, describe(*e, beta.value(), "canonical form postcondition failed"));
    } catch (const CertificateFailure& ex) {
      record_failure(r, describe(*e, beta.value(), ex.what()));
    }
  }
  return r;
}

SuiteResult bound_suite(double alpha, Beta beta, std::size_t count, std::uint64_t seed) {
  SuiteResult r;
  r.name = "large_election_bound";
  r.trials = count;
  const auto instances = generate_bound_instances(alpha, beta, count, seed);
  std::vector<LineElection> elections;
  elections.reserve(instances.size());
  for (const auto& inst : instances) elections.push_back(inst.election);

  BoundOptions options;
  options.mc.seed = seed;
  const auto checks = verify_theorem41(alpha, beta, elections, options);
  for (std::size_t k = 0; k < checks.size(); ++k) {
    const auto& c = checks[k];
    if (c.status == CheckStatus::pass) {
      ++r.passed;
    } else if (c.status == CheckStatus::skipped) {
      ++r.skipped;
    } else {
      record_failure(r, "stream " + std::to_string(instances[k].stream) + ": " + std::string(to_string(c.status)) +
                            ", estimate " + format_number(c.expected_distortion) + " +- " +
                            format_number(c.half_width) + " against bound " + format_number(c.bound));
    }
  }
  return r;
}

}  // namespace abstain
