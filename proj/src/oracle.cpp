#include "csynth/oracle.hpp"

#include <cmath>
#include <string>

#include "csynth/errors.hpp"

namespace csynth {

namespace {

std::uint32_t joint_assignment(const SingleAgentMdp& mdp, const Dfa& dfa,
                               const std::vector<int>& xs) {
  return letter_assignment(joint_label(mdp, xs), dfa.atoms);
}

bool advance(std::vector<int>& xs, int n) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (++xs[i] < n) return true;
    xs[i] = 0;
  }
  return false;
}

}  // namespace

double monolithic_evaluate(const SingleAgentMdp& mdp, const Dfa& dfa,
                           const DecoupledStrategy& strategy,
                           const PolicyPool& pool, const std::vector<int>& x0,
                           int horizon, std::size_t max_entries) {
  int n = mdp.n_states();
  int n_agents = static_cast<int>(x0.size());
  int n_q = dfa.n_states;

  double entries = static_cast<double>(n_q);
  for (int i = 0; i < n_agents; ++i) entries *= n;
  if (entries > static_cast<double>(max_entries))
    throw BudgetError("product table needs " + std::to_string(entries) +
                      " entries, cap is " + std::to_string(max_entries));
  std::size_t n_joint = 1;
  for (int i = 0; i < n_agents; ++i) n_joint *= n;

  // joint index is agent-major: x = sum_i xs[i] * n^i
  std::vector<std::uint32_t> sig(n_joint);
  {
    std::vector<int> xs(n_agents, 0);
    std::size_t idx = 0;
    do {
      sig[idx++] = joint_assignment(mdp, dfa, xs);
    } while (advance(xs, n));
  }

  std::vector<double> prev(n_joint * n_q, 0.0), next(n_joint * n_q, 0.0);
  for (std::size_t x = 0; x < n_joint; ++x)
    prev[x * n_q + dfa.accepting] = 1.0;

  std::vector<int> xs(n_agents), ys(n_agents);
  for (int step = 0; step < horizon; ++step) {
    std::fill(xs.begin(), xs.end(), 0);
    std::size_t xi = 0;
    do {
      for (int q = 0; q < n_q; ++q) {
        double v;
        if (q == dfa.accepting) {
          v = 1.0;
        } else if (q == dfa.dead) {
          v = 0.0;
        } else {
          std::fill(ys.begin(), ys.end(), 0);
          std::size_t yi = 0;
          double sum = 0.0;
          do {
            double p = 1.0;
            for (int i = 0; i < n_agents; ++i) {
              int a = pool.at(strategy.policy_for(q, i))[xs[i]];
              p *= mdp.prob(a, xs[i], ys[i]);
              if (p == 0.0) break;
            }
            if (p > 0.0) {
              int q2 = dfa.succ[q][sig[yi]];
              sum += p * prev[yi * n_q + q2];
            }
            ++yi;
          } while (advance(ys, n));
          v = sum;
        }
        next[xi * n_q + q] = v;
      }
      ++xi;
    } while (advance(xs, n));
    std::swap(prev, next);
  }

  std::size_t x0i = 0;
  for (int i = n_agents - 1; i >= 0; --i) x0i = x0i * n + x0[i];
  int q0 = dfa.succ[dfa.initial][sig[x0i]];
  return prev[x0i * n_q + q0];
}

namespace {

struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

int sample_row(const double* row, int n, double u) {
  double cum = 0.0;
  for (int y = 0; y < n; ++y) {
    cum += row[y];
    if (u < cum) return y;
  }
  return n - 1;
}

}  // namespace

MonteCarloResult monte_carlo(const SingleAgentMdp& mdp, const Dfa& dfa,
                             const DecoupledStrategy& strategy,
                             const PolicyPool& pool,
                             const std::vector<int>& x0, int horizon,
                             std::uint64_t runs, std::uint64_t seed) {
  if (runs == 0) throw ConfigError("need at least one simulation run");
  int n = mdp.n_states();
  int n_agents = static_cast<int>(x0.size());

  int q_start = dfa.succ[dfa.initial][joint_assignment(mdp, dfa, x0)];

  std::uint64_t successes = 0;
  std::vector<int> xs(n_agents);
  for (std::uint64_t r = 0; r < runs; ++r) {
    SplitMix64 rng(SplitMix64(seed + r * 0x9E3779B97F4A7C15ull).next());
    xs.assign(x0.begin(), x0.end());
    int q = q_start;
    bool ok = q == dfa.accepting;
    for (int t = 0; t < horizon && !ok && q != dfa.dead; ++t) {
      for (int i = 0; i < n_agents; ++i) {
        int a = pool.at(strategy.policy_for(q, i))[xs[i]];
        const double* row =
            mdp.trans[a].data() + static_cast<std::size_t>(xs[i]) * n;
        xs[i] = sample_row(row, n, rng.uniform());
      }
      q = dfa.succ[q][joint_assignment(mdp, dfa, xs)];
      ok = q == dfa.accepting;
    }
    if (ok) ++successes;
  }

  MonteCarloResult res;
  res.successes = successes;
  res.runs = runs;
  res.seed = seed;
  res.frequency = static_cast<double>(successes) / static_cast<double>(runs);
  res.std_error =
      std::sqrt(res.frequency * (1.0 - res.frequency) /
                static_cast<double>(runs));
  return res;
}

}  // namespace csynth
