#include "abstain/worstcase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "abstain/csv.hpp"
#include "abstain/exact.hpp"

namespace abstain {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Box {
  double q_lo, q_hi, x_lo, x_hi;
};

// Objective along the binding curve, -inf where infeasible.
class ReducedObjective {
 public:
  ReducedObjective(Beta beta, double epsilon) : beta_(beta), epsilon_(epsilon) {}

  double x_d(double q, double x_b) const {
    if (beta_.value() == 0.0) return 1.0;
    return binding_xd(q, x_b, beta_, epsilon_);
  }

  double operator()(double q, double x_b) const {
    if (q <= 0.0 || x_b < 0.0 || x_b >= 0.5 || q > 1.0) return -kInf;
    if (beta_.value() == 0.0 && q < (1.0 + epsilon_) * (1.0 - q)) return -kInf;
    const double xd = x_d(q, x_b);
    if (!std::isfinite(xd)) return -kInf;
    return cp2_objective(q, x_b, xd);
  }

 private:
  Beta beta_;
  double epsilon_;
};

struct Best {
  double q = 0.0, x = 0.0, value = -kInf;
};

// Row-major scan in ascending (q, x); a later cell must be strictly better,
// so ties resolve to the lexicographically smallest (q_b, x_b).
Best scan(const ReducedObjective& f, const Box& box, int points) {
  Best best;
  const double dq = (box.q_hi - box.q_lo) / (points - 1);
  const double dx = (box.x_hi - box.x_lo) / (points - 1);
  for (int a = 0; a < points; ++a) {
    const double q = a == points - 1 ? box.q_hi : box.q_lo + a * dq;
    for (int b = 0; b < points; ++b) {
      const double x = b == points - 1 ? box.x_hi : box.x_lo + b * dx;
      const double v = f(q, x);
      if (v > best.value) best = {q, x, v};
    }
  }
  return best;
}

}  // namespace

double cp2_objective(double q_b, double x_b, double x_d) {
  if (!(q_b >= 0.0 && q_b <= 1.0) || !(x_b >= 0.0 && x_b <= 0.5) || !(x_d >= 1.0))
    throw std::domain_error("cp2_objective: arguments outside the feasible box");
  const double num = q_b * x_b + (1.0 - q_b) * x_d;
  const double den = q_b * (1.0 - x_b) + (1.0 - q_b) * (x_d - 1.0);
  if (!(den > 0.0)) throw std::domain_error("cp2_objective: nonpositive denominator");
  return num / den;
}

double binding_xd(double q_b, double x_b, Beta beta, double epsilon) {
  if (beta.value() == 0.0) throw std::domain_error("binding_xd: the beta = 0 constraint does not involve x_d");
  if (!(q_b > 0.0 && q_b <= 1.0) || !(x_b >= 0.0 && x_b <= 0.5))
    throw std::domain_error("binding_xd: q_b must lie in (0, 1] and x_b in [0, 1/2]");
  if (q_b == 1.0) return 1.0;
  const double left = std::pow(1.0 - 2.0 * x_b, beta.value()) * q_b;
  if (left == 0.0) return kInf;
  const double base = (1.0 + epsilon) * (1.0 - q_b) / left;
  return std::max(1.0, (1.0 + std::pow(base, 1.0 / beta.value())) / 2.0);
}

double cp2_slack(double q_b, double x_b, double x_d, Beta beta, double epsilon) {
  const double b = beta.value();
  const double left = (x_b == 0.5 && b == 0.0) ? 0.0 : std::pow(1.0 - 2.0 * x_b, b) * q_b;
  const double right = (1.0 + epsilon) * (1.0 - q_b) / std::pow(2.0 * x_d - 1.0, b);
  return left - right;
}

WorstCaseSolution solve_cp2_margin(Beta beta, double epsilon, const GridOptions& grid) {
  if (grid.points < 64) throw std::invalid_argument("grid resolution must be at least 64 points per axis");
  if (!(epsilon >= 0.0)) throw std::invalid_argument("margin must be nonnegative");
  if (!(grid.tolerance > 0.0)) throw std::invalid_argument("grid tolerance must be positive");

  const ReducedObjective f(beta, epsilon);
  // x_b = 1/2 leaves the left mass indifferent, so the box stops a tolerance
  // short of it. For beta = 0 the constraint is q_b >= (1 + eps)/(2 + eps).
  Box box{beta.value() == 0.0 ? (1.0 + epsilon) / (2.0 + epsilon) : 0.0, 1.0, 0.0, 0.5 - grid.tolerance};
  const Box domain = box;

  Best best = scan(f, box, grid.points);
  double hq = (box.q_hi - box.q_lo) / (grid.points - 1);
  double hx = (box.x_hi - box.x_lo) / (grid.points - 1);

  constexpr int kLocalPoints = 21;
  while (std::max(hq, hx) > grid.tolerance / 10.0) {
    box = {std::max(domain.q_lo, best.q - 2.0 * hq), std::min(domain.q_hi, best.q + 2.0 * hq),
           std::max(domain.x_lo, best.x - 2.0 * hx), std::min(domain.x_hi, best.x + 2.0 * hx)};
    const Best local = scan(f, box, kLocalPoints);
    if (local.value > best.value) best = local;
    hq = (box.q_hi - box.q_lo) / (kLocalPoints - 1);
    hx = (box.x_hi - box.x_lo) / (kLocalPoints - 1);
  }

  WorstCaseSolution s;
  s.beta = beta.value();
  s.epsilon = epsilon;
  s.q_b = best.q;
  s.x_b = best.x;
  s.x_d = f.x_d(best.q, best.x);
  s.value = best.value;
  s.attained = beta.value() > 0.0 && best.x < domain.x_hi;
  return s;
}

WorstCaseSolution solve_cp2(Beta beta, const GridOptions& grid) { return solve_cp2_margin(beta, 0.0, grid); }

LineElection witness_election(const WorstCaseSolution& s, int voters) {
  if (voters < 1) throw std::invalid_argument("witness needs at least one voter");
  const int at_b = std::clamp(static_cast<int>(std::ceil(s.q_b * voters - 1e-9)), 1, voters);
  std::vector<double> positions(static_cast<std::size_t>(voters), s.x_d);
  std::fill_n(positions.begin(), at_b, s.x_b);
  return LineElection(std::move(positions));
}

std::vector<WorstCaseSolution> sweep_beta(std::span<const double> betas, const GridOptions& grid) {
  std::vector<WorstCaseSolution> rows;
  rows.reserve(betas.size());
  for (double b : betas) rows.push_back(solve_cp2(Beta(b), grid));
  return rows;
}

void write_sweep_csv(std::ostream& out, std::span<const WorstCaseSolution> rows) {
  out << "beta,dstar,q_b,x_b,x_d,attained\n";
  for (const auto& r : rows)
    out << format_number(r.beta) << ',' << format_number(r.value) << ',' << format_number(r.q_b) << ','
        << format_number(r.x_b) << ',' << format_number(r.x_d) << ',' << (r.attained ? "true" : "false") << '\n';
}

double phi(double alpha) {
  if (!(alpha > 0.0)) throw std::domain_error("phi: alpha must be positive");
  const double gap = alpha - std::sqrt(alpha + 1.0);
  if (std::abs(alpha - std::numbers::phi) < 1e-12 || gap == 0.0)
    throw std::domain_error("phi: pole at the golden ratio");
  return std::pow(alpha + 1.0, 3) / (alpha * alpha * gap * gap);
}

VoteMoments vote_moments(const LineElection& e, Beta beta) {
  VoteMoments m;
  for (const auto& p : profiles(e, beta)) {
    const double v = p.participation * (1.0 - p.participation);
    if (p.preferred == Preference::left) {
      m.mean_left += p.participation;
      m.var_left += v;
    } else if (p.preferred == Preference::right) {
      m.mean_right += p.participation;
      m.var_right += v;
    }
  }
  return m;
}

std::string_view to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "?";
}

std::vector<BoundCheck> verify_theorem41(double alpha, Beta beta, double dstar,
                                             std::span<const LineElection> elections,
                                             const BoundOptions& options) {
  const double threshold = phi(alpha);
  const double bound = (1.0 + 2.0 * alpha) * dstar;

  std::vector<BoundCheck> out;
  out.reserve(elections.size());
  for (std::size_t k = 0; k < elections.size(); ++k) {
    const auto& e = elections[k];
    BoundCheck c;
    c.bound = bound;
    c.votes = expected_votes(e, beta);
    if (c.votes.left < threshold || c.votes.right < threshold) {
      c.reason = "expected votes below phi(alpha) = " + format_number(threshold);
      out.push_back(c);
      continue;
    }
    const auto costs = social_costs(e);
    if (!(costs.right < costs.left)) {
      c.reason = "right is not the strictly optimal candidate";
      out.push_back(c);
      continue;
    }

    const bool use_mc = options.evaluation == Evaluation::monte_carlo ||
                        (options.evaluation == Evaluation::automatic && e.size() > options.exact_limit);
    if (use_mc) {
      McConfig cfg = options.mc;
      cfg.seed = options.mc.seed + k;
      const auto est = simulate(e, beta, cfg);
      c.monte_carlo = true;
      c.expected_distortion = est.expected_distortion_hat;
      c.half_width = est.half_width_d;
    } else {
      c.expected_distortion = expected_distortion(e, beta).expected_distortion;
    }
    c.slack = bound - (c.expected_distortion + c.half_width);
    if (c.slack >= 0.0)
      c.status = CheckStatus::pass;
    else if (c.expected_distortion - c.half_width > bound)
      c.status = CheckStatus::fail;
    else
      c.status = CheckStatus::inconclusive;
    out.push_back(c);
  }
  return out;
}

std::vector<BoundCheck> verify_theorem41(double alpha, Beta beta, std::span<const LineElection> elections,
                                             const BoundOptions& options) {
  return verify_theorem41(alpha, beta, solve_cp2(beta, options.grid).value, elections, options);
}

std::vector<BoundInstance> generate_bound_instances(double alpha, Beta beta, std::size_t count,
                                                            std::uint64_t seed) {
  const double threshold = phi(alpha);
  std::vector<BoundInstance> out;
  out.reserve(count);
  std::uint64_t stream = 0;
  while (out.size() < count) {
    auto rng = make_stream(seed, stream);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> cloud_size(1, 6);

    const double x_d = 1.0 + 2.0 * unit(rng);
    const double p_d = std::pow(2.0 * x_d - 1.0, -beta.value());
    const double right_target = threshold * (1.0 + unit(rng));
    const int d_voters = static_cast<int>(std::ceil(right_target / p_d));

    const int k = cloud_size(rng);
    std::vector<double> cloud(static_cast<std::size_t>(k));
    for (double& x : cloud) x = 0.45 * unit(rng);
    std::vector<int> counts(cloud.size(), 0);
    const double left_target = threshold * (1.0 + unit(rng));
    std::uniform_int_distribution<int> pick(0, k - 1);
    double left_votes = 0.0;
    while (left_votes < left_target) {
      const int c = pick(rng);
      ++counts[static_cast<std::size_t>(c)];
      left_votes += std::pow(1.0 - 2.0 * cloud[static_cast<std::size_t>(c)], beta.value());
    }

    std::vector<double> positions;
    for (std::size_t c = 0; c < cloud.size(); ++c) positions.insert(positions.end(), counts[c], cloud[c]);
    positions.insert(positions.end(), d_voters, x_d);
    LineElection e(std::move(positions));
    const auto sc = social_costs(e);
    if (sc.right < sc.left) out.push_back({std::move(e), stream, x_d, d_voters, cloud, counts});
    ++stream;
  }
  return out;
}

}  // namespace abstain
