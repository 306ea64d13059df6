#include "csynth/guards.hpp"

#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "csynth/errors.hpp"

namespace csynth {

bool AgentCube::satisfied(const JointLetter& letter) const {
  for (std::size_t i = 0; i < letter.agent.size(); ++i)
    if (!agent_satisfied(static_cast<int>(i), letter.agent[i])) return false;
  return true;
}

BddManager::Ref threshold_bdd(BddManager& mgr, int prop, int m, int n_agents,
                              int n_props) {
  if (m <= 0) return BddManager::kTrue;
  if (m > n_agents) return BddManager::kFalse;
  // reach[c] = "at least m - c more carriers among the remaining agents";
  // built from the last agent upward so child variables stay below the
  // node being created
  std::vector<BddManager::Ref> reach(m + 1);
  for (int c = 0; c <= m; ++c)
    reach[c] = c >= m ? BddManager::kTrue : BddManager::kFalse;
  for (int i = n_agents - 1; i >= 0; --i) {
    std::vector<BddManager::Ref> next(m + 1);
    for (int c = 0; c <= m; ++c) {
      BddManager::Ref hi = reach[std::min(c + 1, m)];
      BddManager::Ref lo = reach[c];
      next[c] = mgr.make_node(i * n_props + prop, lo, hi);
    }
    reach = std::move(next);
  }
  return reach[0];
}

BddManager::Ref guard_to_bdd(BddManager& mgr, const Guard& g,
                             const std::vector<CountingProp>& atoms,
                             int n_agents, int n_props) {
  switch (g.kind) {
    case GuardKind::True:
      return BddManager::kTrue;
    case GuardKind::False:
      return BddManager::kFalse;
    case GuardKind::Atom:
      return threshold_bdd(mgr, atoms[g.atom].prop, atoms[g.atom].threshold,
                           n_agents, n_props);
    case GuardKind::Not:
      return mgr.bdd_not(
          guard_to_bdd(mgr, *g.child[0], atoms, n_agents, n_props));
    case GuardKind::And: {
      BddManager::Ref r = BddManager::kTrue;
      for (const auto& c : g.child)
        r = mgr.bdd_and(r, guard_to_bdd(mgr, *c, atoms, n_agents, n_props));
      return r;
    }
    case GuardKind::Or: {
      BddManager::Ref r = BddManager::kFalse;
      for (const auto& c : g.child)
        r = mgr.bdd_or(r, guard_to_bdd(mgr, *c, atoms, n_agents, n_props));
      return r;
    }
  }
  throw std::logic_error("unreachable guard kind");
}

std::vector<AgentCube> extract_cubes(const BddManager& mgr,
                                     BddManager::Ref f, int n_agents,
                                     int n_props) {
  std::vector<AgentCube> out;
  mgr.for_each_cube(f, [&](const std::vector<signed char>& cube) {
    AgentCube c;
    c.must.assign(n_agents, 0);
    c.must_not.assign(n_agents, 0);
    for (int i = 0; i < n_agents; ++i)
      for (int p = 0; p < n_props; ++p) {
        signed char v = cube[i * n_props + p];
        if (v == 1) c.must[i] |= Letter{1} << p;
        if (v == 0) c.must_not[i] |= Letter{1} << p;
      }
    out.push_back(std::move(c));
  });
  return out;
}

std::size_t DfaCubes::total_cubes() const {
  std::size_t n = 0;
  for (const auto& t : transition) n += t.size();
  return n;
}

DfaCubes expand_guards(const Dfa& dfa, int n_agents, const ApSet& ap,
                       int var_cap) {
  int n_props = static_cast<int>(ap.size());
  if (n_agents * n_props > var_cap)
    throw BudgetError("guard expansion needs " +
                      std::to_string(n_agents * n_props) +
                      " Boolean variables, cap is " + std::to_string(var_cap));

  DfaCubes out;
  out.n_agents = n_agents;
  out.n_props = n_props;
  out.transition.resize(dfa.transitions.size());
  out.letters.resize(dfa.transitions.size(), 0.0);

  BddManager mgr(n_agents * n_props);
  std::map<std::pair<Letter, Letter>, int> label_id;
  auto intern = [&](Letter must, Letter must_not) {
    auto [it, fresh] =
        label_id.try_emplace({must, must_not}, static_cast<int>(out.labels.size()));
    if (fresh) out.labels.push_back({must, must_not});
    return it->second;
  };

  for (std::size_t t = 0; t < dfa.transitions.size(); ++t) {
    BddManager::Ref f =
        guard_to_bdd(mgr, *dfa.transitions[t].guard, dfa.atoms, n_agents, n_props);
    out.letters[t] = mgr.sat_count(f);
    for (const AgentCube& cube : extract_cubes(mgr, f, n_agents, n_props)) {
      LabeledCube lc;
      lc.label.reserve(n_agents);
      for (int i = 0; i < n_agents; ++i)
        lc.label.push_back(intern(cube.must[i], cube.must_not[i]));
      out.transition[t].push_back(std::move(lc));
    }
  }
  return out;
}

CubeCountReport cube_count_report(const Dfa& dfa, const DfaCubes& cubes) {
  CubeCountReport rep;
  for (std::size_t t = 0; t < dfa.transitions.size(); ++t) {
    CubeCountRow row;
    row.transition = static_cast<int>(t);
    row.from = dfa.transitions[t].from;
    row.to = dfa.transitions[t].to;
    row.cubes = cubes.transition[t].size();
    row.letters = cubes.letters[t];
    rep.total_cubes += row.cubes;
    rep.total_letters += row.letters;
    rep.rows.push_back(row);
  }
  return rep;
}

std::string cube_to_string(const AgentCube& cube, const ApSet& ap) {
  std::ostringstream os;
  for (std::size_t i = 0; i < cube.must.size(); ++i) {
    if (i) os << ' ';
    os << '{';
    bool any = false;
    for (std::size_t p = 0; p < ap.size(); ++p) {
      Letter bit = Letter{1} << p;
      if (cube.must[i] & bit) {
        if (any) os << ',';
        os << ap.names[p];
        any = true;
      } else if (cube.must_not[i] & bit) {
        if (any) os << ',';
        os << '!' << ap.names[p];
        any = true;
      }
    }
    if (!any) os << '*';
    os << '}';
  }
  return os.str();
}

}  // namespace csynth
