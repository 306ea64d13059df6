#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "csynth/automaton.hpp"
#include "csynth/config.hpp"
#include "csynth/dualtree.hpp"
#include "csynth/guards.hpp"
#include "csynth/model.hpp"
#include "csynth/oracle.hpp"
#include "csynth/policy.hpp"

namespace csynth {

struct IterationRow {
  int iteration = 0;  // 1-based; equals tree depth
  double bound = 0;   // at the reference initial state, after this step
  TreeStats stats;
  double seconds = 0;  // elapsed since solve start
};

struct SolveOptions {
  int horizon = 10;
  double theta_product = 1e-6;
  double theta_single = 1e-4;
  int sweeps = 1;  // 0 keeps the strategy fixed
  bool dedup = true;
  std::size_t max_stored_vectors = 0;
};

struct SolveResult {
  DualTree tree;
  DecoupledStrategy strategy;  // after the final optimization step
  std::vector<IterationRow> iterations;
  std::size_t peak_resident_bytes = 0;
  double seconds = 0;
  int steps_run = 0;  // < horizon when the frontier emptied early
};

// Runs horizon repetitions of optimize / grow / update / prune.
// `reference_x0` (state indices) feeds the per-iteration bound column;
// bounds for other initial states can be read off the returned tree.
SolveResult tree_solve(const SingleAgentMdp& mdp, const Dfa& dfa,
                       const DfaCubes& cubes, PolicyPool& pool, int n_agents,
                       DecoupledStrategy strategy, const SolveOptions& opt,
                       const std::vector<int>* reference_x0 = nullptr);

struct BoundRow {
  std::vector<double> initial;  // as configured
  std::vector<int> states;      // mapped model states
  int q_start = 0;
  double bound = 0;
  std::optional<double> exact;  // monolithic oracle, if enabled and feasible
  std::optional<MonteCarloResult> simulated;  // under the exported strategy
};

struct RunOutcome {
  RunConfig config;  // effective, echoed into the report
  std::string formula_text;
  std::vector<std::string> atom_text;
  int dfa_states = 0;
  int dfa_transitions = 0;
  CubeCountReport cube_report;
  std::vector<std::vector<std::string>> transition_cubes;  // verbose only
  std::vector<IterationRow> iterations;
  int steps_run = 0;
  std::vector<BoundRow> bounds;
  DecoupledStrategy strategy;
  PolicyPool pool;
  TreeStats final_stats;
  std::size_t peak_resident_bytes = 0;
  double solve_seconds = 0;
  double total_seconds = 0;
  bool abstraction_model = false;
  std::vector<double> action_values;  // abstraction action grid, else empty
};

RunOutcome run_synthesis(const RunConfig& cfg);

struct SweepRow {
  int agents = 0;
  std::string method;
  std::string status;  // ok | budget | error
  double bound = 0;
  double seconds = 0;
  std::size_t peak_resident_bytes = 0;
  std::size_t multi_vertices = 0;
  std::size_t stored_vectors = 0;
  std::size_t cube_total = 0;
  std::string detail;  // failure message, empty when ok
};

// One solve per (agent count, method). Initial states are taken from
// the config pool, cycled to the agent count. Failures are recorded
// per row and the sweep continues.
std::vector<SweepRow> sweep_agents(const RunConfig& cfg);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

}  // namespace csynth
