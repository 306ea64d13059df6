#pragma once

// Multi-agent expansion of DFA guards. A guard over counting atoms
// becomes a BDD over N * |AP| Boolean variables (variable (i, p) = agent
// i's letter contains p, agent-major order), with each counting atom
// replaced by a saturating threshold function. The 1-paths of the
// reduced diagram partition the satisfying joint letters into agent
// cubes: per-agent conjunctions of proposition literals.

#include <cstdint>
#include <string>
#include <vector>

#include "csynth/automaton.hpp"
#include "csynth/bdd.hpp"
#include "csynth/cltl.hpp"

namespace csynth {

// One partition element: for each agent, the props its letter must
// contain and the props it must avoid. An all-zero pair leaves the
// agent unconstrained.
struct AgentCube {
  std::vector<Letter> must;
  std::vector<Letter> must_not;

  bool agent_satisfied(int agent, Letter l) const {
    return (l & must[agent]) == must[agent] && (l & must_not[agent]) == 0;
  }
  bool satisfied(const JointLetter& letter) const;
};

// at-least-m-of-N agents carry prop; var (i,p) = i * n_props + p
BddManager::Ref threshold_bdd(BddManager& mgr, int prop, int m, int n_agents,
                              int n_props);

BddManager::Ref guard_to_bdd(BddManager& mgr, const Guard& g,
                             const std::vector<CountingProp>& atoms,
                             int n_agents, int n_props);

std::vector<AgentCube> extract_cubes(const BddManager& mgr,
                                     BddManager::Ref f, int n_agents,
                                     int n_props);

// Per-agent letter constraint interned by (must, must_not) so equal
// constraints share an id across cubes and transitions.
struct AgentLabel {
  Letter must = 0;
  Letter must_not = 0;

  bool satisfied(Letter l) const {
    return (l & must) == must && (l & must_not) == 0;
  }
  bool operator==(const AgentLabel& o) const {
    return must == o.must && must_not == o.must_not;
  }
};

struct LabeledCube {
  std::vector<int> label;  // agent -> AgentLabel id
};

// Guard expansion of a whole DFA at a fixed agent count.
struct DfaCubes {
  int n_agents = 0;
  int n_props = 0;
  std::vector<AgentLabel> labels;                    // id -> constraint
  std::vector<std::vector<LabeledCube>> transition;  // per DFA transition
  std::vector<double> letters;                       // satisfying joint letters

  std::size_t total_cubes() const;
};

// Expands every transition guard. Throws BudgetError when
// n_agents * |AP| exceeds var_cap.
DfaCubes expand_guards(const Dfa& dfa, int n_agents, const ApSet& ap,
                       int var_cap = 64);

struct CubeCountRow {
  int transition = 0;
  int from = 0;
  int to = 0;
  std::size_t cubes = 0;
  double letters = 0;
};

struct CubeCountReport {
  std::vector<CubeCountRow> rows;
  std::size_t total_cubes = 0;
  double total_letters = 0;
};

CubeCountReport cube_count_report(const Dfa& dfa, const DfaCubes& cubes);

std::string cube_to_string(const AgentCube& cube, const ApSet& ap);

}  // namespace csynth
