#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "csynth/automaton.hpp"
#include "csynth/model.hpp"
#include "csynth/policy.hpp"

namespace csynth {

// Exact acceptance probability within `horizon` steps on the full
// product of all agents' states and the automaton, under a fixed
// decoupled strategy. The initial joint letter is consumed before the
// first step. Exponential in the agent count; guarded by max_entries
// on the table size |X|^N * |Q|.
double monolithic_evaluate(const SingleAgentMdp& mdp, const Dfa& dfa,
                           const DecoupledStrategy& strategy,
                           const PolicyPool& pool, const std::vector<int>& x0,
                           int horizon, std::size_t max_entries = 1000000);

struct MonteCarloResult {
  double frequency = 0;
  double std_error = 0;
  std::uint64_t successes = 0;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;
};

// Trajectory sampling under the same semantics. Each run draws from
// its own substream derived from (seed, run index), so results do not
// depend on scheduling and are reproducible bit for bit.
MonteCarloResult monte_carlo(const SingleAgentMdp& mdp, const Dfa& dfa,
                             const DecoupledStrategy& strategy,
                             const PolicyPool& pool,
                             const std::vector<int>& x0, int horizon,
                             std::uint64_t runs, std::uint64_t seed);

}  // namespace csynth
