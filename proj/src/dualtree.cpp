#include "csynth/dualtree.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "csynth/errors.hpp"

namespace csynth {

std::vector<double> single_agent_operator(const SingleAgentMdp& mdp,
                                          const std::vector<int>& policy,
                                          const AgentLabel& alpha,
                                          const std::vector<double>& w) {
  std::size_t n = mdp.label.size();
  if (w.size() != n) throw std::invalid_argument("value vector length mismatch");
  if (policy.size() != n) throw std::invalid_argument("policy length mismatch");
  std::vector<double> masked(n, 0.0);
  for (std::size_t x = 0; x < n; ++x)
    if (alpha.satisfied(mdp.label[x])) masked[x] = w[x];
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    int a = policy[x];
    if (a < 0 || a >= mdp.n_actions)
      throw std::invalid_argument("action index out of range");
    const double* row = mdp.trans[a].data() + x * n;
    double s = 0;
    for (std::size_t y = 0; y < n; ++y) s += row[y] * masked[y];
    out[x] = s;
  }
  return out;
}

DualTree::DualTree(const SingleAgentMdp& mdp, const Dfa& dfa,
                   const DfaCubes& cubes, const PolicyPool& pool,
                   int n_agents, DualTreeOptions opt)
    : mdp_(&mdp), dfa_(&dfa), cubes_(&cubes), pool_(&pool),
      n_agents_(n_agents), opt_(opt) {
  if (n_agents < 1) throw ConfigError("need at least one agent");
  if (cubes.n_agents != n_agents)
    throw ConfigError("cube expansion was built for a different agent count");
  if (cubes.transition.size() != dfa.transitions.size())
    throw ConfigError("cube expansion does not match the automaton");

  indicator_.reserve(cubes.labels.size());
  for (const AgentLabel& l : cubes.labels) {
    std::vector<char> ok(mdp.label.size(), 0);
    for (std::size_t x = 0; x < mdp.label.size(); ++x)
      ok[x] = l.satisfied(mdp.label[x]) ? 1 : 0;
    indicator_.push_back(std::move(ok));
  }

  MultiVertex root;
  root.dfa_state = dfa.accepting;
  multi_.push_back(root);
  multi_count_ = 1;

  std::vector<double> ones(mdp.label.size(), 1.0);
  int n_roots = opt_.dedup ? 1 : n_agents_;
  for (int r = 0; r < n_roots; ++r) {
    SingleVertex sv;
    sv.value = ones;
    single_.push_back(std::move(sv));
    ++vector_count_;
  }
  relation_.emplace_back();
  for (int i = 0; i < n_agents_; ++i) {
    int kappa = opt_.dedup ? 0 : i;
    relation_[0].push_back(kappa);
    ++single_[kappa].refs;
  }
  frontier_.push_back(0);
}

int DualTree::new_single_vertex(int parent, int label, int dfa_state,
                                int group, int policy) {
  SingleVertex sv;
  sv.parent = parent;
  sv.label = label;
  sv.dfa_state = dfa_state;
  sv.group = group;
  sv.policy = policy;
  int id = static_cast<int>(single_.size());
  single_.push_back(std::move(sv));
  ++vector_count_;
  if (opt_.max_stored_vectors && vector_count_ > opt_.max_stored_vectors)
    throw BudgetError("stored value vectors exceed " +
                      std::to_string(opt_.max_stored_vectors));
  pending_values_.push_back(id);
  return id;
}

void DualTree::grow(const DecoupledStrategy& strategy) {
  if (!pending_values_.empty())
    throw std::logic_error("grow called before value_update");
  if (strategy.n_agents() != n_agents_)
    throw ConfigError("strategy agent count mismatch");

  std::vector<int> next_frontier;
  for (int z : frontier_) {
    int target = multi_[z].dfa_state;
    for (int t : dfa_->in[target]) {
      int source = dfa_->transitions[t].from;
      if (source == dfa_->accepting || source == dfa_->dead) continue;
      const auto& cube_list = cubes_->transition[t];
      for (std::size_t c = 0; c < cube_list.size(); ++c) {
        MultiVertex child;
        child.parent = z;
        child.dfa_state = source;
        child.depth = multi_[z].depth + 1;
        child.transition = t;
        child.cube = static_cast<int>(c);
        int zc = static_cast<int>(multi_.size());
        multi_.push_back(child);
        ++multi_count_;
        depth_ = std::max(depth_, child.depth);

        relation_.emplace_back();
        auto& rel = relation_.back();
        rel.reserve(n_agents_);
        for (int i = 0; i < n_agents_; ++i) {
          int parent_k = relation_[z][i];
          int label = cube_list[c].label[i];
          int group = strategy.group_of[i];
          int policy = strategy.policy[source][group];
          int kappa;
          if (opt_.dedup) {
            auto key = std::make_tuple(parent_k, label, source, group);
            auto it = child_of_.find(key);
            if (it != child_of_.end()) {
              kappa = it->second;
            } else {
              kappa = new_single_vertex(parent_k, label, source, group, policy);
              child_of_.emplace(key, kappa);
            }
          } else {
            kappa = new_single_vertex(parent_k, label, source, group, policy);
          }
          rel.push_back(kappa);
          ++single_[kappa].refs;
        }
        next_frontier.push_back(zc);
      }
    }
  }
  frontier_ = std::move(next_frontier);
}

void DualTree::apply_edge_operator(int kappa) {
  std::size_t n = mdp_->label.size();
  const SingleVertex& sv = single_[kappa];
  const std::vector<double>& pv = single_[sv.parent].value;
  const std::vector<char>& ok = indicator_[sv.label];
  std::vector<double> masked(n);
  for (std::size_t x = 0; x < n; ++x) masked[x] = ok[x] ? pv[x] : 0.0;
  const std::vector<int>& pol = pool_->at(sv.policy);
  std::vector<double> out(n, 0.0);
  for (std::size_t x = 0; x < n; ++x) {
    const double* row = mdp_->trans[pol[x]].data() + x * n;
    double s = 0;
    for (std::size_t y = 0; y < n; ++y) s += row[y] * masked[y];
    out[x] = s;
  }
  single_[kappa].value = std::move(out);
}

void DualTree::value_update() {
  for (int k : pending_values_) apply_edge_operator(k);
  pending_values_.clear();
}

void DualTree::revalue(const DecoupledStrategy& strategy) {
  if (!pending_values_.empty())
    throw std::logic_error("revalue called before value_update");
  for (std::size_t k = 0; k < single_.size(); ++k) {
    SingleVertex& sv = single_[k];
    if (!sv.alive || sv.parent < 0) continue;
    sv.policy = strategy.policy[sv.dfa_state][sv.group];
    apply_edge_operator(static_cast<int>(k));
  }
}

void DualTree::release_vertex(int z) {
  multi_[z].alive = false;
  --multi_count_;
  ++pruned_count_;
  for (int kappa : relation_[z]) {
    SingleVertex& sv = single_[kappa];
    if (--sv.refs == 0) {
      sv.alive = false;
      --vector_count_;
      if (opt_.dedup)
        child_of_.erase(
            std::make_tuple(sv.parent, sv.label, sv.dfa_state, sv.group));
      std::vector<double>().swap(sv.value);
    }
  }
}

void DualTree::prune() {
  if (!pending_values_.empty())
    throw std::logic_error("prune called before value_update");
  std::vector<int> kept;
  kept.reserve(frontier_.size());
  for (int z : frontier_) {
    double score = 1.0;
    for (int kappa : relation_[z]) {
      const std::vector<double>& w = single_[kappa].value;
      double m = *std::max_element(w.begin(), w.end());
      if (m < opt_.theta_single) {
        score = 0.0;
        break;
      }
      score *= m;
    }
    if (score < opt_.theta_product)
      release_vertex(z);
    else
      kept.push_back(z);
  }
  frontier_ = std::move(kept);
}

double DualTree::witness_mass(const std::vector<int>& x0) const {
  if (!pending_values_.empty())
    throw std::logic_error("bound requested before value_update");
  if (static_cast<int>(x0.size()) != n_agents_)
    throw ConfigError("initial state list does not match agent count");
  for (int x : x0)
    if (x < 0 || x >= mdp_->n_states())
      throw ConfigError("initial state out of range");

  std::uint32_t sigma = letter_assignment(joint_label(*mdp_, x0), dfa_->atoms);
  int q0 = dfa_->succ[dfa_->initial][sigma];
  if (q0 == dfa_->dead) return 0.0;

  double sum = 0.0;
  for (std::size_t z = 0; z < multi_.size(); ++z) {
    if (!multi_[z].alive || multi_[z].dfa_state != q0) continue;
    double prod = 1.0;
    for (int i = 0; i < n_agents_; ++i)
      prod *= single_[relation_[z][i]].value[x0[i]];
    sum += prod;
  }
  return sum;
}

double DualTree::theorem1_bound(const std::vector<int>& x0) const {
  double sum = witness_mass(x0);
  if (sum > 1.0 + 1e-9)
    throw SolverError("witness mass " + std::to_string(sum) + " exceeds 1");
  return std::min(sum, 1.0);
}

TreeStats DualTree::stats() const {
  TreeStats st;
  st.depth = depth_;
  st.multi_vertices = multi_count_;
  st.multi_edges = multi_count_ > 0 ? multi_count_ - 1 : 0;
  st.single_vertices = vector_count_;
  std::size_t n_roots = opt_.dedup ? 1 : static_cast<std::size_t>(n_agents_);
  st.single_edges = vector_count_ > n_roots ? vector_count_ - n_roots : 0;
  st.pruned_vertices = pruned_count_;
  st.resident_bytes =
      vector_count_ *
          (mdp_->label.size() * sizeof(double) + sizeof(SingleVertex)) +
      multi_count_ * (sizeof(MultiVertex) + n_agents_ * sizeof(int));
  return st;
}

}  // namespace csynth
