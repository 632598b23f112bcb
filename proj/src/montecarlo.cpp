#include "abstain/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <thread>
#include <utility>
#include <vector>

namespace abstain {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Voters sharing a preference and a participation probability are drawn as
// one binomial.
struct Group {
  Preference preferred;
  double participation;
  std::uint64_t count;
};

std::vector<Group> group_voters(const LineElection& e, Beta beta) {
  std::map<std::pair<int, double>, std::uint64_t> counts;
  for (const auto& p : profiles(e, beta)) {
    if (p.preferred == Preference::indifferent || p.participation == 0.0) continue;
    ++counts[{p.preferred == Preference::left ? 0 : 1, p.participation}];
  }
  std::vector<Group> groups;
  for (const auto& [key, n] : counts)
    groups.push_back({key.first == 0 ? Preference::left : Preference::right, key.second, n});
  return groups;
}

Candidate draw(const std::vector<Group>& groups, std::mt19937_64& rng) {
  std::int64_t margin = 0;
  for (const auto& g : groups) {
    std::int64_t cast;
    if (g.participation >= 1.0) {
      cast = static_cast<std::int64_t>(g.count);
    } else {
      std::binomial_distribution<std::int64_t> votes(static_cast<std::int64_t>(g.count), g.participation);
      cast = votes(rng);
    }
    margin += g.preferred == Preference::left ? cast : -cast;
  }
  if (margin > 0) return Candidate::left;
  if (margin < 0) return Candidate::right;
  std::bernoulli_distribution coin(0.5);
  return coin(rng) ? Candidate::left : Candidate::right;
}

}  // namespace

double hoeffding_half_width(std::uint64_t samples, double confidence) {
  if (samples == 0) throw std::invalid_argument("at least one sample is required");
  if (!(confidence > 0.0 && confidence < 1.0)) throw std::invalid_argument("confidence must lie in (0, 1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(samples)));
}

std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t worker) {
  std::uint64_t state = seed;
  const std::uint64_t a = splitmix64(state);
  state ^= worker * 0xd1b54a32d192ed03ULL;
  const std::uint64_t b = splitmix64(state);
  const std::uint64_t c = splitmix64(state);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                    static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32),
                    static_cast<std::uint32_t>(worker)};
  return std::mt19937_64(seq);
}

Candidate sample_outcome(const LineElection& e, Beta beta, std::mt19937_64& rng) {
  return draw(group_voters(e, beta), rng);
}

McEstimate simulate(const LineElection& e, Beta beta, const McConfig& cfg) {
  const double t = hoeffding_half_width(cfg.samples, cfg.confidence);
  if (cfg.workers == 0) throw std::invalid_argument("worker count must be positive");

  const Distortions d = distortions(social_costs(e));
  if (std::isinf(d.left) || std::isinf(d.right))
    throw std::range_error("expected distortion is unbounded: the optimal candidate has zero social cost");

  const auto groups = group_voters(e, beta);
  const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(cfg.workers, cfg.samples));
  std::vector<std::uint64_t> left_wins(workers, 0);

  auto run = [&](unsigned w) {
    const std::uint64_t share = cfg.samples / workers + (w < cfg.samples % workers ? 1 : 0);
    auto rng = make_stream(cfg.seed, w);
    std::uint64_t wins = 0;
    for (std::uint64_t s = 0; s < share; ++s)
      if (draw(groups, rng) == Candidate::left) ++wins;
    left_wins[w] = wins;
  };

  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }

  std::uint64_t wins = 0;
  for (auto w : left_wins) wins += w;

  McEstimate est;
  est.samples = cfg.samples;
  est.p_left_hat = static_cast<double>(wins) / static_cast<double>(cfg.samples);
  est.expected_distortion_hat = est.p_left_hat * d.left + (1.0 - est.p_left_hat) * d.right;
  est.half_width_p = t;
  est.half_width_d = t * (std::max(d.left, d.right) - 1.0);
  return est;
}

}  // namespace abstain
