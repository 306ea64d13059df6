#pragma once

#include <map>
#include <string>
#include <vector>

namespace csynth {

struct Dfa;
struct SingleAgentMdp;

// Memoryless single-agent policies interned by content. Ids are dense
// and assigned in first-use order, so runs are reproducible and id
// equality doubles as policy equality.
class PolicyPool {
 public:
  int intern(std::vector<int> actions);
  const std::vector<int>& at(int id) const { return policies_[id]; }
  std::size_t size() const { return policies_.size(); }

 private:
  std::vector<std::vector<int>> policies_;
  std::map<std::vector<int>, int> index_;
};

enum class SharingMode { FullyShared, Grouped, PerAgent };

SharingMode parse_sharing_mode(const std::string& name);
std::string to_string(SharingMode mode);

// One policy per (automaton state, agent group). Agents in a group act
// identically whenever the run is in the same automaton state.
struct DecoupledStrategy {
  SharingMode mode = SharingMode::FullyShared;
  std::vector<int> group_of;             // agent -> group
  std::vector<std::vector<int>> policy;  // [automaton state][group] -> pool id

  int n_agents() const { return static_cast<int>(group_of.size()); }
  int n_groups() const {
    return policy.empty() ? 0 : static_cast<int>(policy[0].size());
  }
  int policy_for(int q, int agent) const {
    return policy[q][group_of[agent]];
  }
};

// everyone plays action 0 everywhere; `groups` is required for
// SharingMode::Grouped and ignored otherwise
DecoupledStrategy initial_strategy(const Dfa& dfa, int n_agents,
                                   SharingMode mode, PolicyPool& pool,
                                   const SingleAgentMdp& mdp,
                                   const std::vector<int>* groups = nullptr);

// Strategy tables as a structured document. `action_values` optionally
// maps action indices to original control units in the export.
std::string strategy_to_json_text(const DecoupledStrategy& s,
                                  const PolicyPool& pool,
                                  const std::vector<double>* action_values);
DecoupledStrategy strategy_from_json_text(const std::string& text,
                                          PolicyPool& pool, int dfa_states,
                                          int n_agents, int n_states,
                                          int n_actions);

class DualTree;

// Coordinate ascent over the policies the next growth step will use.
// For each automaton state q reachable by that step, each group's
// policy is re-selected to maximize, componentwise over single-agent
// states, the weighted one-step mass of its members' prospective
// edges, where an edge's weight for agent i is the product over the
// other agents of their edge-restricted one-step total mass. Groups
// are visited round-robin for the given number of sweeps. Ties pick
// the lowest action index.
void optimize_policies(const DualTree& tree, DecoupledStrategy& strategy,
                       PolicyPool& pool, int sweeps = 1);

}  // namespace csynth
