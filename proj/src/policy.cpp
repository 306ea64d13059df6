#include "csynth/policy.hpp"

#include <map>
#include <utility>

#include "json.hpp"

#include "csynth/automaton.hpp"
#include "csynth/dualtree.hpp"
#include "csynth/errors.hpp"
#include "csynth/model.hpp"

namespace csynth {

int PolicyPool::intern(std::vector<int> actions) {
  auto it = index_.find(actions);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(policies_.size());
  index_.emplace(actions, id);
  policies_.push_back(std::move(actions));
  return id;
}

SharingMode parse_sharing_mode(const std::string& name) {
  if (name == "shared") return SharingMode::FullyShared;
  if (name == "grouped") return SharingMode::Grouped;
  if (name == "per-agent") return SharingMode::PerAgent;
  throw ConfigError("unknown sharing mode '" + name +
                    "' (expected shared, grouped, or per-agent)");
}

std::string to_string(SharingMode mode) {
  switch (mode) {
    case SharingMode::FullyShared: return "shared";
    case SharingMode::Grouped: return "grouped";
    case SharingMode::PerAgent: return "per-agent";
  }
  return "?";
}

DecoupledStrategy initial_strategy(const Dfa& dfa, int n_agents,
                                   SharingMode mode, PolicyPool& pool,
                                   const SingleAgentMdp& mdp,
                                   const std::vector<int>* groups) {
  DecoupledStrategy s;
  s.mode = mode;
  switch (mode) {
    case SharingMode::FullyShared:
      s.group_of.assign(n_agents, 0);
      break;
    case SharingMode::PerAgent:
      s.group_of.resize(n_agents);
      for (int i = 0; i < n_agents; ++i) s.group_of[i] = i;
      break;
    case SharingMode::Grouped: {
      if (!groups || static_cast<int>(groups->size()) != n_agents)
        throw ConfigError("grouped sharing needs one group index per agent");
      s.group_of = *groups;
      int max_g = -1;
      for (int g : s.group_of) {
        if (g < 0) throw ConfigError("group indices must be nonnegative");
        max_g = std::max(max_g, g);
      }
      for (int g = 0; g <= max_g; ++g) {
        bool used = false;
        for (int h : s.group_of) used = used || h == g;
        if (!used)
          throw ConfigError("group indices must be contiguous from 0");
      }
      break;
    }
  }
  int n_groups = 0;
  for (int g : s.group_of) n_groups = std::max(n_groups, g + 1);
  int zero = pool.intern(std::vector<int>(mdp.n_states(), 0));
  s.policy.assign(dfa.n_states, std::vector<int>(n_groups, zero));
  return s;
}

std::string strategy_to_json_text(const DecoupledStrategy& s,
                                  const PolicyPool& pool,
                                  const std::vector<double>* action_values) {
  nlohmann::json j;
  j["sharing"] = to_string(s.mode);
  j["group_of"] = s.group_of;
  auto actions = nlohmann::json::array();
  for (const auto& per_q : s.policy) {
    auto row = nlohmann::json::array();
    for (int id : per_q) row.push_back(pool.at(id));
    actions.push_back(std::move(row));
  }
  j["actions"] = std::move(actions);
  if (action_values) {
    auto values = nlohmann::json::array();
    for (const auto& per_q : s.policy) {
      auto row = nlohmann::json::array();
      for (int id : per_q) {
        std::vector<double> u;
        for (int a : pool.at(id)) u.push_back((*action_values)[a]);
        row.push_back(std::move(u));
      }
      values.push_back(std::move(row));
    }
    j["action_values"] = std::move(values);
  }
  return j.dump(2);
}

DecoupledStrategy strategy_from_json_text(const std::string& text,
                                          PolicyPool& pool, int dfa_states,
                                          int n_agents, int n_states,
                                          int n_actions) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad strategy JSON: ") + e.what());
  }
  DecoupledStrategy s;
  try {
    s.mode = parse_sharing_mode(j.at("sharing").get<std::string>());
    s.group_of = j.at("group_of").get<std::vector<int>>();
    for (const auto& row : j.at("actions")) {
      std::vector<int> per_q;
      for (const auto& pol : row) {
        std::vector<int> actions = pol.get<std::vector<int>>();
        if (static_cast<int>(actions.size()) != n_states)
          throw ConfigError("strategy row length does not match state count");
        for (int a : actions)
          if (a < 0 || a >= n_actions)
            throw ConfigError("strategy action index out of range");
        per_q.push_back(pool.intern(std::move(actions)));
      }
      s.policy.push_back(std::move(per_q));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad strategy value: ") + e.what());
  }
  if (static_cast<int>(s.group_of.size()) != n_agents)
    throw ConfigError("strategy agent count does not match the run");
  if (static_cast<int>(s.policy.size()) != dfa_states)
    throw ConfigError("strategy table does not match the automaton");
  int n_groups = 0;
  for (int g : s.group_of) {
    if (g < 0) throw ConfigError("strategy group indices must be nonnegative");
    n_groups = std::max(n_groups, g + 1);
  }
  for (const auto& per_q : s.policy)
    if (static_cast<int>(per_q.size()) != n_groups)
      throw ConfigError("strategy group tables do not match group count");
  return s;
}

namespace {

struct ProspectiveEdge {
  int vertex;
  int transition;
  int cube;
  std::vector<int> pair;  // agent -> masked-vector id
};

}  // namespace

void optimize_policies(const DualTree& tree, DecoupledStrategy& strategy,
                       PolicyPool& pool, int sweeps) {
  if (sweeps <= 0) return;
  const Dfa& dfa = tree.dfa();
  const DfaCubes& cubes = tree.cubes();
  const SingleAgentMdp& mdp = tree.mdp();
  int n_agents = tree.n_agents();
  std::size_t n = mdp.label.size();

  // masked vectors: the parent value restricted to states satisfying
  // the edge's per-agent letter constraint, shared across edges
  std::map<std::pair<int, int>, int> pair_ids;  // (label, vector) -> id
  std::vector<std::vector<double>> masked;
  auto masked_id = [&](int label, int kappa) {
    auto [it, fresh] =
        pair_ids.try_emplace({label, kappa}, static_cast<int>(masked.size()));
    if (fresh) {
      const std::vector<char>& ok = tree.label_indicator(label);
      const std::vector<double>& w = tree.value(kappa);
      std::vector<double> m(n, 0.0);
      for (std::size_t x = 0; x < n; ++x)
        if (ok[x]) m[x] = w[x];
      masked.push_back(std::move(m));
    }
    return it->second;
  };

  std::vector<std::vector<ProspectiveEdge>> per_state(dfa.n_states);
  for (int z : tree.frontier()) {
    int target = tree.vertex_state(z);
    for (int t : dfa.in[target]) {
      int source = dfa.transitions[t].from;
      if (source == dfa.accepting || source == dfa.dead) continue;
      const auto& cube_list = cubes.transition[t];
      for (std::size_t c = 0; c < cube_list.size(); ++c) {
        ProspectiveEdge e;
        e.vertex = z;
        e.transition = t;
        e.cube = static_cast<int>(c);
        e.pair.reserve(n_agents);
        for (int i = 0; i < n_agents; ++i)
          e.pair.push_back(
              masked_id(cube_list[c].label[i], tree.relation(z)[i]));
        per_state[source].push_back(std::move(e));
      }
    }
  }

  // column sums of the kernel under a policy, for one-step total mass
  std::map<int, std::vector<double>> colsum_cache;
  auto colsum = [&](int policy_id) -> const std::vector<double>& {
    auto it = colsum_cache.find(policy_id);
    if (it != colsum_cache.end()) return it->second;
    const std::vector<int>& pol = pool.at(policy_id);
    std::vector<double> cs(n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
      const double* row = mdp.trans[pol[x]].data() + x * n;
      for (std::size_t y = 0; y < n; ++y) cs[y] += row[y];
    }
    return colsum_cache.emplace(policy_id, std::move(cs)).first->second;
  };
  std::map<std::pair<int, int>, double> norm_cache;  // (pair id, policy)
  auto edge_norm = [&](int pid, int policy_id) {
    auto it = norm_cache.find({pid, policy_id});
    if (it != norm_cache.end()) return it->second;
    const std::vector<double>& cs = colsum(policy_id);
    const std::vector<double>& m = masked[pid];
    double s = 0;
    for (std::size_t y = 0; y < n; ++y) s += cs[y] * m[y];
    norm_cache.emplace(std::make_pair(pid, policy_id), s);
    return s;
  };

  int n_groups = strategy.n_groups();
  std::vector<double> weight, utility(n), gain(n), prefix(n_agents + 1),
      suffix(n_agents + 1);
  for (int q = 0; q < dfa.n_states; ++q) {
    const auto& edges = per_state[q];
    if (edges.empty()) continue;
    for (int sweep = 0; sweep < sweeps; ++sweep)
      for (int g = 0; g < n_groups; ++g) {
        weight.assign(masked.size(), 0.0);
        for (const ProspectiveEdge& e : edges) {
          prefix[0] = 1.0;
          for (int j = 0; j < n_agents; ++j)
            prefix[j + 1] =
                prefix[j] * edge_norm(e.pair[j], strategy.policy_for(q, j));
          suffix[n_agents] = 1.0;
          for (int j = n_agents - 1; j >= 0; --j)
            suffix[j] =
                suffix[j + 1] * edge_norm(e.pair[j], strategy.policy_for(q, j));
          for (int i = 0; i < n_agents; ++i)
            if (strategy.group_of[i] == g)
              weight[e.pair[i]] += prefix[i] * suffix[i + 1];
        }
        utility.assign(n, 0.0);
        for (std::size_t pid = 0; pid < masked.size(); ++pid) {
          if (weight[pid] == 0.0) continue;
          for (std::size_t x = 0; x < n; ++x)
            utility[x] += weight[pid] * masked[pid][x];
        }
        std::vector<int> chosen(n, 0);
        gain.assign(n, 0.0);
        for (int a = 0; a < mdp.n_actions; ++a)
          for (std::size_t x = 0; x < n; ++x) {
            const double* row = mdp.trans[a].data() + x * n;
            double s = 0;
            for (std::size_t y = 0; y < n; ++y) s += row[y] * utility[y];
            if (a == 0 || s > gain[x]) {
              gain[x] = s;
              chosen[x] = a;
            }
          }
        strategy.policy[q][g] = pool.intern(std::move(chosen));
      }
  }
}

}  // namespace csynth
