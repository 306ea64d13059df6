#include "csynth/synthesis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "csynth/cltl.hpp"
#include "csynth/errors.hpp"

namespace csynth {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

}  // namespace

SolveResult tree_solve(const SingleAgentMdp& mdp, const Dfa& dfa,
                       const DfaCubes& cubes, PolicyPool& pool, int n_agents,
                       DecoupledStrategy strategy, const SolveOptions& opt,
                       const std::vector<int>* reference_x0) {
  auto t0 = std::chrono::steady_clock::now();
  DualTreeOptions topt;
  topt.theta_product = opt.theta_product;
  topt.theta_single = opt.theta_single;
  topt.dedup = opt.dedup;
  topt.max_stored_vectors = opt.max_stored_vectors;

  DualTree tree(mdp, dfa, cubes, pool, n_agents, topt);
  std::vector<IterationRow> rows;
  std::size_t peak = tree.stats().resident_bytes;
  int steps = 0;
  for (int k = 0; k < opt.horizon; ++k) {
    if (tree.frontier().empty()) break;
    if (opt.sweeps > 0) optimize_policies(tree, strategy, pool, opt.sweeps);
    tree.grow(strategy);
    tree.value_update();
    tree.prune();
    ++steps;

    IterationRow row;
    row.iteration = steps;
    row.stats = tree.stats();
    peak = std::max(peak, row.stats.resident_bytes);
    if (reference_x0) row.bound = tree.witness_mass(*reference_x0);
    row.seconds = seconds_since(t0);
    rows.push_back(row);
  }
  // values were computed against the policies of their creation step;
  // recompute them under the final strategy so the reported bound is a
  // plain probability statement about the strategy being exported
  if (opt.sweeps > 0) tree.revalue(strategy);

  SolveResult res{std::move(tree), std::move(strategy), std::move(rows),
                  peak, seconds_since(t0), steps};
  return res;
}

namespace {

struct BuiltModel {
  SingleAgentMdp mdp;
  ApSet ap;
  bool abstraction = false;
  Abstraction1d abs;
};

BuiltModel build_model(const ModelConfig& mc) {
  BuiltModel out;
  if (mc.kind == ModelConfig::Kind::Abstraction) {
    out.abs = abstract_1d_gaussian(mc.abstraction);
    out.mdp = out.abs.mdp;
    out.ap = out.abs.ap;
    out.abstraction = true;
  } else {
    out.mdp = mdp_from_json(read_text_file(mc.path));
    out.ap = make_ap_set(mc.prop_names);
    Letter mask = out.ap.size() >= 32
                      ? ~Letter{0}
                      : (Letter{1} << out.ap.size()) - 1;
    for (Letter l : out.mdp.label)
      if (l & ~mask)
        throw ConfigError("model labels use bits beyond the named props");
  }
  return out;
}

std::vector<int> map_initial(const BuiltModel& model,
                             const std::vector<double>& joint) {
  std::vector<int> states;
  states.reserve(joint.size());
  for (double v : joint) {
    if (model.abstraction) {
      int cell = model.abs.cell_of(v);
      if (cell == model.abs.sink())
        throw ConfigError("initial position " + std::to_string(v) +
                          " lies outside the abstraction domain");
      states.push_back(cell);
    } else {
      int s = static_cast<int>(std::llround(v));
      if (std::abs(v - s) > 1e-9)
        throw ConfigError("file models need integer initial states");
      if (s < 0 || s >= model.mdp.n_states())
        throw ConfigError("initial state " + std::to_string(s) +
                          " out of range");
      states.push_back(s);
    }
  }
  return states;
}

std::vector<double> abstraction_actions(const Abstraction1dConfig& a) {
  std::vector<double> u(a.n_actions);
  for (int k = 0; k < a.n_actions; ++k)
    u[k] = a.n_actions == 1
               ? a.action_lo
               : a.action_lo + k * (a.action_hi - a.action_lo) /
                                   (a.n_actions - 1);
  return u;
}

}  // namespace

RunOutcome run_synthesis(const RunConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  cfg.validate();

  RunOutcome out;
  out.config = cfg;

  BuiltModel model = build_model(cfg.model);
  out.abstraction_model = model.abstraction;
  if (model.abstraction)
    out.action_values = abstraction_actions(model.abs.cfg);

  FormulaPtr f = parse_formula(cfg.formula, model.ap, cfg.agents);
  out.formula_text = to_string(*f, model.ap);
  Dfa dfa = compile_dfa(*f, model.ap);
  out.dfa_states = dfa.n_states;
  out.dfa_transitions = static_cast<int>(dfa.transitions.size());
  for (const CountingProp& cp : dfa.atoms)
    out.atom_text.push_back("[" + model.ap.names[cp.prop] + ", " +
                            std::to_string(cp.threshold) + "]");

  DfaCubes cubes = expand_guards(dfa, cfg.agents, model.ap, cfg.var_cap);
  out.cube_report = cube_count_report(dfa, cubes);
  if (cfg.verbose_cubes) {
    for (const auto& per_t : cubes.transition) {
      std::vector<std::string> texts;
      for (const LabeledCube& lc : per_t) {
        AgentCube cube;
        cube.must.reserve(lc.label.size());
        cube.must_not.reserve(lc.label.size());
        for (int id : lc.label) {
          cube.must.push_back(cubes.labels[id].must);
          cube.must_not.push_back(cubes.labels[id].must_not);
        }
        texts.push_back(cube_to_string(cube, model.ap));
      }
      out.transition_cubes.push_back(std::move(texts));
    }
  }

  std::vector<std::vector<int>> initial_states;
  for (const auto& joint : cfg.initial)
    initial_states.push_back(map_initial(model, joint));

  PolicyPool pool;
  DecoupledStrategy strategy;
  int sweeps = cfg.sweeps;
  if (!cfg.strategy_file.empty()) {
    strategy = strategy_from_json_text(read_text_file(cfg.strategy_file), pool,
                                       dfa.n_states, cfg.agents,
                                       model.mdp.n_states(),
                                       model.mdp.n_actions);
    sweeps = 0;  // evaluate the imported strategy as is
  } else {
    strategy = initial_strategy(dfa, cfg.agents, cfg.sharing, pool, model.mdp,
                                cfg.groups.empty() ? nullptr : &cfg.groups);
  }

  SolveOptions sopt;
  sopt.horizon = cfg.horizon;
  sopt.theta_product = cfg.theta_product;
  sopt.theta_single = cfg.theta_single;
  sopt.sweeps = sweeps;
  sopt.dedup = !cfg.flat;
  sopt.max_stored_vectors = cfg.max_stored_vectors;

  SolveResult solved =
      tree_solve(model.mdp, dfa, cubes, pool, cfg.agents, std::move(strategy),
                 sopt, initial_states.empty() ? nullptr : &initial_states[0]);
  out.iterations = std::move(solved.iterations);
  out.steps_run = solved.steps_run;
  out.final_stats = solved.tree.stats();
  out.peak_resident_bytes = solved.peak_resident_bytes;
  out.solve_seconds = solved.seconds;
  out.strategy = solved.strategy;

  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    BoundRow row;
    row.initial = cfg.initial[i];
    row.states = initial_states[i];
    std::uint32_t sigma =
        letter_assignment(joint_label(model.mdp, row.states), dfa.atoms);
    row.q_start = dfa.succ[dfa.initial][sigma];
    row.bound = solved.tree.theorem1_bound(row.states);
    if (cfg.oracle.monolithic)
      row.exact = monolithic_evaluate(model.mdp, dfa, solved.strategy, pool,
                                      row.states, cfg.horizon,
                                      cfg.oracle.budget);
    if (cfg.oracle.runs > 0)
      row.simulated = monte_carlo(model.mdp, dfa, solved.strategy, pool,
                                  row.states, cfg.horizon, cfg.oracle.runs,
                                  cfg.oracle.seed + i);
    out.bounds.push_back(std::move(row));
  }

  out.pool = std::move(pool);
  out.total_seconds = seconds_since(t0);
  return out;
}

std::vector<SweepRow> sweep_agents(const RunConfig& cfg) {
  cfg.validate();
  BuiltModel model = build_model(cfg.model);
  const std::vector<double>& pool_positions = cfg.initial[0];

  std::vector<SweepRow> rows;
  for (int n : cfg.sweep_agent_counts) {
    std::vector<double> joint(n);
    for (int i = 0; i < n; ++i)
      joint[i] = pool_positions[i % pool_positions.size()];

    for (const std::string& method : cfg.sweep_methods) {
      SweepRow row;
      row.agents = n;
      row.method = method;
      try {
        FormulaPtr f = parse_formula(cfg.formula, model.ap, n);
        Dfa dfa = compile_dfa(*f, model.ap);
        DfaCubes cubes = expand_guards(dfa, n, model.ap, cfg.var_cap);
        row.cube_total = cubes.total_cubes();

        std::vector<int> x0 = map_initial(model, joint);
        PolicyPool pool;
        DecoupledStrategy strategy =
            initial_strategy(dfa, n, cfg.sharing, pool, model.mdp,
                             cfg.groups.empty() ? nullptr : &cfg.groups);

        SolveOptions sopt;
        sopt.horizon = cfg.horizon;
        sopt.theta_product = cfg.theta_product;
        sopt.theta_single = cfg.theta_single;
        sopt.sweeps = cfg.sweeps;
        sopt.dedup = method == "dual";
        sopt.max_stored_vectors = cfg.max_stored_vectors;

        SolveResult solved = tree_solve(model.mdp, dfa, cubes, pool, n,
                                        std::move(strategy), sopt, &x0);
        row.bound = solved.tree.theorem1_bound(x0);
        row.seconds = solved.seconds;
        row.peak_resident_bytes = solved.peak_resident_bytes;
        row.multi_vertices = solved.tree.alive_multi();
        row.stored_vectors = solved.tree.stored_count();
        row.status = "ok";
      } catch (const BudgetError& e) {
        row.status = "budget";
        row.detail = e.what();
      } catch (const std::exception& e) {
        row.status = "error";
        row.detail = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "agents,method,status,bound,seconds,peak_resident_bytes,"
        "multi_vertices,stored_vectors,cube_total,detail\n";
  char buf[64];
  for (const SweepRow& r : rows) {
    os << r.agents << ',' << r.method << ',' << r.status << ',';
    if (r.status == "ok") {
      std::snprintf(buf, sizeof buf, "%.17g", r.bound);
      os << buf;
    }
    os << ',';
    std::snprintf(buf, sizeof buf, "%.6f", r.seconds);
    os << buf << ',' << r.peak_resident_bytes << ',' << r.multi_vertices << ','
       << r.stored_vectors << ',' << r.cube_total << ',';
    std::string d = r.detail;
    for (char& c : d)
      if (c == ',' || c == '\n') c = ';';
    os << d << '\n';
  }
  return os.str();
}

}  // namespace csynth
