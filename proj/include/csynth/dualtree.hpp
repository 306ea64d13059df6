#pragma once

// Backward tree construction of disjoint acceptance witnesses. The
// multi-agent tree is rooted at the accepting DFA state and grows one
// level per horizon step along reversed DFA transitions, one child per
// (transition, cube). Per-agent value vectors live in a separate
// single-agent tree; a relation maps (vertex, agent) to its vector, so
// identical (letter constraint, policy) chains are stored once.

#include <cstddef>
#include <map>
#include <tuple>
#include <vector>

#include "csynth/automaton.hpp"
#include "csynth/guards.hpp"
#include "csynth/model.hpp"
#include "csynth/policy.hpp"

namespace csynth {

// out(x) = sum_{x'} T(x' | x, policy(x)) * [L(x') satisfies alpha] * w(x')
std::vector<double> single_agent_operator(const SingleAgentMdp& mdp,
                                          const std::vector<int>& policy,
                                          const AgentLabel& alpha,
                                          const std::vector<double>& w);

struct DualTreeOptions {
  double theta_product = 1e-6;
  double theta_single = 1e-4;
  // false stores one vector per (vertex, agent) with no sharing; the
  // memory baseline the compressed mode is measured against
  bool dedup = true;
  std::size_t max_stored_vectors = 0;  // 0 = unlimited
};

struct TreeStats {
  int depth = 0;
  std::size_t multi_vertices = 0;  // alive |Z|
  std::size_t multi_edges = 0;
  std::size_t single_vertices = 0;  // alive |K| = resident value vectors
  std::size_t single_edges = 0;
  std::size_t pruned_vertices = 0;  // cumulative
  std::size_t resident_bytes = 0;   // vectors + tree structure estimate
};

class DualTree {
 public:
  DualTree(const SingleAgentMdp& mdp, const Dfa& dfa, const DfaCubes& cubes,
           const PolicyPool& pool, int n_agents, DualTreeOptions opt = {});

  // expands every frontier vertex along all incoming DFA transitions
  // whose source is neither accepting nor dead, one child per cube;
  // per-agent vectors are reused when the parent vector already has a
  // child under the same letter constraint and policy slot
  void grow(const DecoupledStrategy& strategy);

  // fills in values for vectors created by the last grow; parents are
  // always older than children, so one forward pass suffices
  void value_update();

  // drops frontier vertices whose per-agent maxima multiply below
  // theta_product (a per-agent maximum below theta_single forces the
  // score to zero), then releases vectors nothing references any more
  void prune();

  // recomputes every stored vector under the given strategy, in
  // creation order. After interleaved optimization the per-vertex
  // policies differ across depths; this pass makes the certificate a
  // plain probability statement about one stationary strategy.
  void revalue(const DecoupledStrategy& strategy);

  // sum over vertices labeled with the DFA state reached on the initial
  // joint letter of the product of per-agent values at x0; rejects
  // sums above 1 (beyond rounding), which cannot occur for values
  // computed under a single strategy
  double theorem1_bound(const std::vector<int>& x0) const;

  // the same sum without the consistency check, for progress traces
  // taken while policies are still changing between iterations
  double witness_mass(const std::vector<int>& x0) const;

  const std::vector<int>& frontier() const { return frontier_; }
  std::size_t vertex_count() const { return multi_.size(); }  // incl. pruned
  bool vertex_alive(int z) const { return multi_[z].alive; }
  int vertex_state(int z) const { return multi_[z].dfa_state; }
  int vertex_parent(int z) const { return multi_[z].parent; }
  int vertex_depth(int z) const { return multi_[z].depth; }
  int vertex_transition(int z) const { return multi_[z].transition; }
  int vertex_cube(int z) const { return multi_[z].cube; }
  const std::vector<int>& relation(int z) const { return relation_[z]; }

  std::size_t stored_count() const { return vector_count_; }  // alive |K|
  const std::vector<double>& value(int kappa) const {
    return single_[kappa].value;
  }
  int vector_policy(int kappa) const { return single_[kappa].policy; }
  int vector_label(int kappa) const { return single_[kappa].label; }
  int vector_state(int kappa) const { return single_[kappa].dfa_state; }
  const std::vector<char>& label_indicator(int label_id) const {
    return indicator_[label_id];
  }

  int n_agents() const { return n_agents_; }
  const Dfa& dfa() const { return *dfa_; }
  const DfaCubes& cubes() const { return *cubes_; }
  const SingleAgentMdp& mdp() const { return *mdp_; }
  const PolicyPool& pool() const { return *pool_; }
  const DualTreeOptions& options() const { return opt_; }

  std::size_t alive_multi() const { return multi_count_; }
  TreeStats stats() const;

 private:
  struct MultiVertex {
    int parent = -1;
    int dfa_state = 0;
    int depth = 0;
    int transition = -1;  // DFA transition of the edge to the parent
    int cube = -1;        // cube index within that transition
    bool alive = true;
  };
  struct SingleVertex {
    int parent = -1;
    int label = -1;      // AgentLabel id on the edge to the parent
    int dfa_state = -1;  // automaton state this vertex acts from
    int group = -1;      // strategy group whose policy drives the edge
    int policy = -1;     // policy pool id at creation time
    int refs = 0;        // relation entries pointing here
    bool alive = true;
    std::vector<double> value;
  };

  int new_single_vertex(int parent, int label, int dfa_state, int group,
                        int policy);
  void release_vertex(int z);
  void apply_edge_operator(int kappa);

  const SingleAgentMdp* mdp_;
  const Dfa* dfa_;
  const DfaCubes* cubes_;
  const PolicyPool* pool_;
  int n_agents_;
  DualTreeOptions opt_;

  std::vector<MultiVertex> multi_;
  std::vector<std::vector<int>> relation_;
  std::vector<SingleVertex> single_;
  std::vector<int> frontier_;
  std::vector<int> pending_values_;  // vectors awaiting value_update
  // (parent vector, label id, automaton state, group) -> existing child.
  // State and group are part of the key so every vector belongs to one
  // automaton state and one policy slot; a vector is shared exactly by
  // the agents whose policies are identical along the whole chain.
  std::map<std::tuple<int, int, int, int>, int> child_of_;
  std::vector<std::vector<char>> indicator_;  // label id -> state mask
  std::size_t multi_count_ = 0;               // alive
  std::size_t vector_count_ = 0;              // alive
  std::size_t pruned_count_ = 0;              // cumulative
  int depth_ = 0;
};

}  // namespace csynth
