// Acceptance gate: eight end-to-end checks, one line each. Exits 0 only
// when every check holds.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "csynth/automaton.hpp"
#include "csynth/cltl.hpp"
#include "csynth/config.hpp"
#include "csynth/dualtree.hpp"
#include "csynth/errors.hpp"
#include "csynth/guards.hpp"
#include "csynth/model.hpp"
#include "csynth/oracle.hpp"
#include "csynth/policy.hpp"
#include "csynth/report.hpp"
#include "csynth/synthesis.hpp"

using namespace csynth;

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  static const clock::time_point start = clock::now();
  return std::chrono::duration<double>(clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- random
// small instances shared by the first three checks

std::string random_spec(std::mt19937_64& rng) {
  auto prop = [&]() { return rng() % 2 ? "p" : "q"; };
  auto m = [&]() { return std::to_string(1 + rng() % 2); };
  switch (rng() % 4) {
    case 0:
      return std::string("[") + prop() + ", " + m() + "]";
    case 1:
      return std::string("F [") + prop() + ", " + m() + "]";
    case 2:
      return std::string("[") + prop() + ", " + m() + "] U [" + prop() +
             ", " + m() + "]";
    default: {
      int depth = 1 + rng() % 3;
      std::string out;
      for (int i = 0; i < depth; ++i) out += "X ";
      return out + "[" + prop() + ", " + m() + "]";
    }
  }
}

struct Instance {
  SingleAgentMdp mdp;
  ApSet ap;
  std::string spec;
  Dfa dfa;
  DfaCubes cubes;
  PolicyPool pool;
  DecoupledStrategy strategy;
  std::vector<int> x0;  // live start when one exists
};

Instance make_instance(int seed) {
  std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 811);
  Instance ins;
  int n_states = 4 + static_cast<int>(rng() % 3);
  int n_actions = 2 + static_cast<int>(rng() % 2);
  ins.mdp = random_mdp(rng, n_states, n_actions, 2);
  ins.ap = make_ap_set({"p", "q"});
  ins.spec = random_spec(rng);
  FormulaPtr f = parse_formula(ins.spec, ins.ap, 2);
  ins.dfa = compile_dfa(*f, ins.ap);
  ins.cubes = expand_guards(ins.dfa, 2, ins.ap);

  SharingMode mode = rng() % 2 ? SharingMode::PerAgent
                               : SharingMode::FullyShared;
  ins.strategy = initial_strategy(ins.dfa, 2, mode, ins.pool, ins.mdp);
  for (int q = 0; q < ins.dfa.n_states; ++q)
    for (int& pid : ins.strategy.policy[q]) {
      std::vector<int> actions(n_states);
      for (int& a : actions)
        a = static_cast<int>(rng() % static_cast<unsigned>(n_actions));
      pid = ins.pool.intern(std::move(actions));
    }

  ins.x0 = {static_cast<int>(rng() % n_states),
            static_cast<int>(rng() % n_states)};
  for (int tries = 0; tries < 20; ++tries) {
    std::uint32_t sigma =
        letter_assignment(joint_label(ins.mdp, ins.x0), ins.dfa.atoms);
    if (ins.dfa.succ[ins.dfa.initial][sigma] != ins.dfa.dead) break;
    ins.x0 = {static_cast<int>(rng() % n_states),
              static_cast<int>(rng() % n_states)};
  }
  return ins;
}

std::vector<std::vector<int>> all_joint_states(int n_states) {
  std::vector<std::vector<int>> out;
  for (int x = 0; x < n_states; ++x)
    for (int y = 0; y < n_states; ++y) out.push_back({x, y});
  return out;
}

SolveOptions no_prune_options() {
  SolveOptions opt;
  opt.horizon = 5;
  opt.theta_product = 0;
  opt.theta_single = 0;
  opt.sweeps = 0;
  return opt;
}

// 1. On random two-agent instances with a fixed decoupled strategy and
// no pruning, the tree bound equals the probability computed on the
// full joint product.
Outcome check_oracle_equivalence() {
  double t0 = now_seconds();
  double max_diff = 0;
  int starts = 0;
  for (int seed = 1; seed <= 50; ++seed) {
    Instance ins = make_instance(seed);
    SolveResult res = tree_solve(ins.mdp, ins.dfa, ins.cubes, ins.pool, 2,
                                 ins.strategy, no_prune_options());
    for (const std::vector<int>& x0 : all_joint_states(ins.mdp.n_states())) {
      double bound = res.tree.theorem1_bound(x0);
      double exact =
          monolithic_evaluate(ins.mdp, ins.dfa, ins.strategy, ins.pool, x0, 5);
      double diff = std::abs(bound - exact);
      if (diff > max_diff) max_diff = diff;
      ++starts;
      if (diff > 1e-9)
        return {false, fmt("seed %d spec %s start (%d,%d): bound %.12f vs "
                           "joint %.12f",
                           seed, ins.spec.c_str(), x0[0], x0[1], bound,
                           exact)};
    }
  }
  double secs = now_seconds() - t0;
  if (secs >= 120)
    return {false, fmt("took %.1fs, limit 120s", secs)};
  return {true, fmt("50 instances, %d joint starts, max difference %.2e, "
                    "%.1fs",
                    starts, max_diff, secs)};
}

// 2. Flat per-(vertex, agent) storage and deduplicated storage give the
// same bounds, and the deduplicated vector count never exceeds the flat
// count |Z| * N.
Outcome check_flat_dual_agreement() {
  double max_diff = 0;
  std::size_t worst_flat = 0, worst_dual = 0;
  for (int seed = 1; seed <= 50; ++seed) {
    Instance ins = make_instance(seed);
    SolveOptions opt = no_prune_options();
    SolveResult dual = tree_solve(ins.mdp, ins.dfa, ins.cubes, ins.pool, 2,
                                  ins.strategy, opt);
    opt.dedup = false;
    SolveResult flat = tree_solve(ins.mdp, ins.dfa, ins.cubes, ins.pool, 2,
                                  ins.strategy, opt);
    std::size_t cap = flat.tree.alive_multi() * 2;
    if (flat.tree.stored_count() != cap)
      return {false, fmt("seed %d: flat stores %zu vectors, expected %zu",
                         seed, flat.tree.stored_count(), cap)};
    if (dual.tree.stored_count() > cap)
      return {false, fmt("seed %d: dedup stores %zu vectors above cap %zu",
                         seed, dual.tree.stored_count(), cap)};
    if (flat.tree.stored_count() > worst_flat) {
      worst_flat = flat.tree.stored_count();
      worst_dual = dual.tree.stored_count();
    }
    for (const std::vector<int>& x0 : all_joint_states(ins.mdp.n_states())) {
      double diff = std::abs(dual.tree.theorem1_bound(x0) -
                             flat.tree.theorem1_bound(x0));
      if (diff > max_diff) max_diff = diff;
      if (diff > 1e-12)
        return {false, fmt("seed %d start (%d,%d): flat and dedup bounds "
                           "differ by %.2e",
                           seed, x0[0], x0[1], diff)};
    }
  }
  return {true, fmt("50 instances, max bound difference %.2e, largest tree "
                    "%zu flat vs %zu shared vectors",
                    max_diff, worst_flat, worst_dual)};
}

// 3. Pruning can only lower the certified bound, and the unpruned bound
// stays below a simulation estimate plus three standard errors.
Outcome check_pruning_soundness() {
  double min_prune_slack = 1.0, min_mc_slack = 1.0;
  std::size_t vertices_pruned = 0;
  for (int seed = 1; seed <= 20; ++seed) {
    Instance ins = make_instance(seed);
    SolveResult unpruned = tree_solve(ins.mdp, ins.dfa, ins.cubes, ins.pool,
                                      2, ins.strategy, no_prune_options());
    double full = unpruned.tree.theorem1_bound(ins.x0);
    MonteCarloResult mc =
        monte_carlo(ins.mdp, ins.dfa, ins.strategy, ins.pool, ins.x0, 5,
                    100000, 1000 + seed);
    double ceiling = mc.frequency + 3 * mc.std_error;
    if (full > ceiling + 1e-12)
      return {false, fmt("seed %d: unpruned bound %.6f above simulated "
                         "ceiling %.6f",
                         seed, full, ceiling)};
    min_mc_slack = std::min(min_mc_slack, ceiling - full);
    for (double theta : {1e-3, 1e-6}) {
      SolveOptions opt = no_prune_options();
      opt.theta_product = theta;
      SolveResult pruned = tree_solve(ins.mdp, ins.dfa, ins.cubes, ins.pool,
                                      2, ins.strategy, opt);
      vertices_pruned += pruned.tree.stats().pruned_vertices;
      double low = pruned.tree.theorem1_bound(ins.x0);
      if (low > full + 1e-12)
        return {false, fmt("seed %d theta %g: pruned bound %.6f above "
                           "unpruned %.6f",
                           seed, theta, low, full)};
      min_prune_slack = std::min(min_prune_slack, full - low);
    }
  }
  return {true, fmt("20 instances, thresholds 1e-3 and 1e-6, %zu vertices "
                    "pruned; pruned <= unpruned (min slack %.1e) <= "
                    "simulated + 3se (min slack %.1e)",
                    vertices_pruned, min_prune_slack, min_mc_slack)};
}

// 4. Guard expansion: the six-agent single-proposition guard covers
// exactly 63 joint letters, and every benchmark guard's cube list
// partitions its satisfying letters at each agent count up to four.
Outcome check_counting_expansion() {
  ApSet ap1 = make_ap_set({"p"});
  FormulaPtr f1 = parse_formula("[p, 1]", ap1, 6);
  Dfa dfa1 = compile_dfa(*f1, ap1);
  DfaCubes cubes1 = expand_guards(dfa1, 6, ap1);
  double letters = -1;
  for (const CubeCountRow& row : cube_count_report(dfa1, cubes1).rows)
    if (row.from == dfa1.initial && row.to == dfa1.accepting)
      letters = row.letters;
  if (letters != 63.0)
    return {false, fmt("six-agent [p, 1] guard counts %g letters, want 63",
                       letters)};

  struct Bench {
    const char* text;
    std::vector<std::string> props;
  };
  const Bench benches[] = {
      {"(! [p1, N/2]) U [p2, N/3]", {"p1", "p2"}},
      {"[p1, N] U ([p2, 1] & [p1, N])", {"p1", "p2"}},
      {"[p1, N] & X [p1, N] & X X [p1, N] & X X X [p1, N] & X X X X [p1, N] "
       "& X X X X X [p1, N]",
       {"p1"}},
      {"[p1, N/2] & F [p2, N/4]", {"p1", "p2"}},
  };
  long transitions_checked = 0, letters_checked = 0;
  for (const Bench& b : benches) {
    ApSet ap = make_ap_set(b.props);
    int n_props = static_cast<int>(ap.size());
    for (int n = 1; n <= 4; ++n) {
      FormulaPtr f = parse_formula(b.text, ap, n);
      Dfa dfa = compile_dfa(*f, ap);
      DfaCubes cubes = expand_guards(dfa, n, ap);
      std::uint32_t n_joint = 1u << (n * n_props);
      for (std::size_t t = 0; t < dfa.transitions.size(); ++t) {
        ++transitions_checked;
        for (std::uint32_t bits = 0; bits < n_joint; ++bits) {
          JointLetter jl;
          for (int i = 0; i < n; ++i)
            jl.agent.push_back((bits >> (i * n_props)) &
                               ((1u << n_props) - 1));
          std::uint32_t sigma = letter_assignment(jl, dfa.atoms);
          bool holds = eval_guard(*dfa.transitions[t].guard, sigma);
          int hits = 0;
          for (const LabeledCube& cube : cubes.transition[t]) {
            bool in_cube = true;
            for (int i = 0; i < n && in_cube; ++i)
              in_cube = cubes.labels[cube.label[i]].satisfied(jl.agent[i]);
            hits += in_cube;
          }
          ++letters_checked;
          if (hits != (holds ? 1 : 0))
            return {false,
                    fmt("%s at %d agents, transition %zu, letter %u: guard "
                        "%s but %d cubes match",
                        b.text, n, t, bits, holds ? "holds" : "fails", hits)};
        }
      }
    }
  }
  return {true, fmt("63 letters at six agents; %ld transitions, %ld joint "
                    "letters checked against brute force",
                    transitions_checked, letters_checked)};
}

// 5. The compiled automaton accepts a word exactly at its minimal
// witness index, on every short assignment word and on random
// three-agent letter traces.
Outcome check_automaton_semantics() {
  const struct {
    const char* text;
    std::vector<std::string> props;
  } benches[] = {
      {"(! [p1, N/2]) U [p2, N/3]", {"p1", "p2"}},
      {"[p1, N] U ([p2, 1] & [p1, N])", {"p1", "p2"}},
      {"[p1, N] & X [p1, N] & X X [p1, N] & X X X [p1, N] & X X X X [p1, N] "
       "& X X X X X [p1, N]",
       {"p1"}},
      {"[p1, N/2] & F [p2, N/4]", {"p1", "p2"}},
  };
  long words = 0, traces = 0;
  std::mt19937_64 rng(424243);
  for (const auto& b : benches) {
    ApSet ap = make_ap_set(b.props);
    FormulaPtr f = parse_formula(b.text, ap, 3);
    Dfa dfa = compile_dfa(*f, ap);
    std::uint32_t n_sigma = 1u << dfa.atoms.size();

    std::vector<std::uint32_t> word;
    std::function<Outcome(int)> walk = [&](int len) -> Outcome {
      if (!word.empty()) {
        ++words;
        auto got = run(dfa, word).acceptance_index;
        auto want = witness_index_assignments(word, *f, dfa.atoms);
        if (got != want)
          return {false,
                  fmt("%s: assignment word of length %zu disagrees "
                      "(automaton %d, trace %d)",
                      b.text, word.size(), got ? *got : -1,
                      want ? *want : -1)};
      }
      if (len == 4) return {true, ""};
      for (std::uint32_t s = 0; s < n_sigma; ++s) {
        word.push_back(s);
        Outcome sub = walk(len + 1);
        word.pop_back();
        if (!sub.pass) return sub;
      }
      return {true, ""};
    };
    Outcome exhaustive = walk(0);
    if (!exhaustive.pass) return exhaustive;

    Letter mask = (1u << ap.size()) - 1;
    for (int k = 0; k < 10000; ++k) {
      int len = 1 + static_cast<int>(rng() % 6);
      std::vector<JointLetter> trace(len);
      std::vector<std::uint32_t> w(len);
      for (int t = 0; t < len; ++t) {
        trace[t].agent = {static_cast<Letter>(rng()) & mask,
                          static_cast<Letter>(rng()) & mask,
                          static_cast<Letter>(rng()) & mask};
        w[t] = letter_assignment(trace[t], dfa.atoms);
      }
      ++traces;
      auto got = run(dfa, w).acceptance_index;
      auto want = witness_index(trace, *f);
      if (got != want)
        return {false, fmt("%s: random three-agent trace %d disagrees "
                           "(automaton %d, trace %d)",
                           b.text, k, got ? *got : -1, want ? *want : -1)};
    }
  }
  return {true, fmt("4 formulas, %ld assignment words and %ld random "
                    "three-agent traces agree",
                    words, traces)};
}

// 6. The four-agent grid benchmark reaches the published ballpark; any
// column outside tolerance must be accompanied by the report note that
// ties bounds to the abstraction parameters.
Outcome check_benchmark_bounds() {
  RunConfig cfg;
  cfg.model.abstraction.props = {{"p1", 2.0, 4.0}, {"p2", -4.0, -2.0}};
  cfg.formula = "(! [p1, N/2]) U [p2, N/3]";
  cfg.agents = 4;
  cfg.horizon = 25;
  cfg.sweeps = 1;
  cfg.initial = {{-2.1, -1.9, 0.1, 2.4},
                 {-1.8, -1.7, 1.8, 1.7},
                 {2.3, 1.0, 1.5, 0.0}};
  RunOutcome out = run_synthesis(cfg);
  double b1 = out.bounds[0].bound;
  double b2 = out.bounds[1].bound;
  double b3 = out.bounds[2].bound;
  bool ok1 = b1 >= 0.9;
  bool ok2 = std::abs(b2 - 0.6051) <= 0.15;
  bool ok3 = std::abs(b3 - 0.3382) <= 0.15;
  bool flagged = report_to_json_text(out).find(
                     "bounds depend on its resolution") != std::string::npos;
  if ((!ok1 || !ok2 || !ok3) && !flagged)
    return {false, fmt("bounds %.4f/%.4f/%.4f miss tolerance and the report "
                       "does not name the abstraction parameters",
                       b1, b2, b3)};
  if (!ok1)
    return {false, fmt("first start bound %.4f below 0.9", b1)};
  std::string detail =
      fmt("bounds %.4f (>=0.9), %.4f (ref 0.6051), %.4f (ref 0.3382)", b1,
          b2, b3);
  if (!ok2 || !ok3)
    detail += "; out-of-tolerance columns flagged as abstraction-dependent "
              "in the report";
  return {true, detail};
}

// 7. Time and resident-vector memory grow at most twice as fast as the
// agent count on the two scaling benchmarks, and the flat-to-shared
// memory ratio keeps widening on the four-agent benchmark family.
Outcome check_scaling_trends() {
  double t0 = now_seconds();
  const struct {
    const char* text;
    std::vector<LabelInterval> props;
  } benches[] = {
      {"[p1, N] U ([p2, 1] & [p1, N])",
       {{"p1", -5.0, 5.0}, {"p2", -2.0, 2.0}}},
      {"[p1, N] & X [p1, N] & X X [p1, N] & X X X [p1, N] & X X X X [p1, N] "
       "& X X X X X [p1, N]",
       {{"p1", -5.0, 5.0}}},
  };
  std::string detail;
  for (const auto& b : benches) {
    Abstraction1dConfig grid;
    grid.props = b.props;
    Abstraction1d abs = abstract_1d_gaussian(grid);
    std::vector<std::string> names;
    for (const LabelInterval& li : b.props) names.push_back(li.name);
    ApSet ap = make_ap_set(names);

    double prev_time = 0;
    std::size_t prev_mem = 0;
    int prev_n = 0;
    for (int n : {3, 6, 9, 12}) {
      FormulaPtr f = parse_formula(b.text, ap, n);
      Dfa dfa = compile_dfa(*f, ap);
      DfaCubes cubes = expand_guards(dfa, n, ap);
      SolveOptions opt;
      opt.horizon = 10;
      double best = 1e30;
      std::size_t peak = 0;
      for (int rep = 0; rep < 3; ++rep) {
        PolicyPool pool;
        DecoupledStrategy strategy =
            initial_strategy(dfa, n, SharingMode::FullyShared, pool, abs.mdp);
        SolveResult res =
            tree_solve(abs.mdp, dfa, cubes, pool, n, strategy, opt);
        best = std::min(best, res.seconds);
        peak = res.peak_resident_bytes;
      }
      if (prev_n) {
        double allowed = 2.0 * n / prev_n;
        double time_ratio =
            std::max(best, 1e-3) / std::max(prev_time, 1e-3);
        double mem_ratio = static_cast<double>(peak) / prev_mem;
        if (time_ratio > allowed)
          return {false, fmt("%d -> %d agents: time grew %.2fx, allowed "
                             "%.2fx",
                             prev_n, n, time_ratio, allowed)};
        if (mem_ratio > allowed)
          return {false, fmt("%d -> %d agents: memory grew %.2fx, allowed "
                             "%.2fx",
                             prev_n, n, mem_ratio, allowed)};
      }
      prev_time = best;
      prev_mem = peak;
      prev_n = n;
    }
    detail += fmt("%zu-prop benchmark to 12 agents ok; ", b.props.size());
  }

  Abstraction1dConfig grid;
  grid.n_cells = 50;
  grid.props = {{"p1", 2.0, 4.0}, {"p2", -4.0, -2.0}};
  Abstraction1d abs = abstract_1d_gaussian(grid);
  ApSet ap = make_ap_set({"p1", "p2"});
  double prev_ratio = 0;
  for (int n : {4, 6, 8}) {
    FormulaPtr f = parse_formula("(! [p1, N/2]) U [p2, N/3]", ap, n);
    Dfa dfa = compile_dfa(*f, ap);
    DfaCubes cubes = expand_guards(dfa, n, ap);
    SolveOptions opt;
    opt.horizon = 2;
    opt.theta_product = 1e-3;
    opt.theta_single = 1e-2;
    std::size_t mem[2] = {0, 0};
    for (int flat = 0; flat < 2; ++flat) {
      opt.dedup = flat == 0;
      PolicyPool pool;
      DecoupledStrategy strategy =
          initial_strategy(dfa, n, SharingMode::FullyShared, pool, abs.mdp);
      SolveResult res =
          tree_solve(abs.mdp, dfa, cubes, pool, n, strategy, opt);
      mem[flat] = res.peak_resident_bytes;
    }
    double ratio = static_cast<double>(mem[1]) / mem[0];
    if (ratio < prev_ratio)
      return {false, fmt("flat/shared memory ratio fell from %.2f to %.2f "
                         "at %d agents",
                         prev_ratio, ratio, n)};
    detail += fmt("flat/shared %.1fx at %d agents%s", ratio, n,
                  n == 8 ? "" : ", ");
    prev_ratio = ratio;
  }
  double secs = now_seconds() - t0;
  if (secs >= 1800)
    return {false, fmt("took %.0fs, limit 1800s", secs)};
  return {true, detail + fmt(" (%.1fs)", secs)};
}

// 8. One policy-improvement pass before growth never certifies less
// than the untouched initial strategy, and the whole procedure repeats
// bit for bit.
Outcome check_optimization_ascent() {
  auto batch = [](std::vector<double>& bounds, std::vector<int>& actions)
      -> Outcome {
    for (int seed = 1; seed <= 20; ++seed) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(seed) * 1009);
      int n_states = 4 + static_cast<int>(rng() % 3);
      int n_actions = 2 + static_cast<int>(rng() % 2);
      SingleAgentMdp mdp = random_mdp(rng, n_states, n_actions, 2);
      ApSet ap = make_ap_set({"p", "q"});
      std::string text = random_spec(rng);
      FormulaPtr f = parse_formula(text, ap, 2);
      Dfa dfa = compile_dfa(*f, ap);
      DfaCubes cubes = expand_guards(dfa, 2, ap);
      std::vector<int> x0{static_cast<int>(rng() % n_states),
                          static_cast<int>(rng() % n_states)};
      for (int tries = 0; tries < 20; ++tries) {
        std::uint32_t sigma =
            letter_assignment(joint_label(mdp, x0), dfa.atoms);
        if (dfa.succ[dfa.initial][sigma] != dfa.dead) break;
        x0 = {static_cast<int>(rng() % n_states),
              static_cast<int>(rng() % n_states)};
      }

      PolicyPool pool0;
      DecoupledStrategy fixed =
          initial_strategy(dfa, 2, SharingMode::FullyShared, pool0, mdp);
      SolveOptions opt = no_prune_options();
      SolveResult base = tree_solve(mdp, dfa, cubes, pool0, 2, fixed, opt);
      double b0 = base.tree.theorem1_bound(x0);

      PolicyPool pool1;
      DecoupledStrategy tuned =
          initial_strategy(dfa, 2, SharingMode::FullyShared, pool1, mdp);
      DualTree tree(mdp, dfa, cubes, pool1, 2);
      optimize_policies(tree, tuned, pool1, 1);
      for (int k = 0; k < 5; ++k) {
        tree.grow(tuned);
        tree.value_update();
      }
      double b1 = tree.theorem1_bound(x0);
      if (b1 < b0 - 1e-12)
        return {false, fmt("seed %d spec %s: one pass drops the bound from "
                           "%.9f to %.9f",
                           seed, text.c_str(), b0, b1)};
      bounds.push_back(b0);
      bounds.push_back(b1);
      for (int q = 0; q < dfa.n_states; ++q)
        for (int pid : tuned.policy[q])
          for (int a : pool1.at(pid)) actions.push_back(a);
    }
    return {true, ""};
  };

  std::vector<double> bounds_a, bounds_b;
  std::vector<int> actions_a, actions_b;
  Outcome first = batch(bounds_a, actions_a);
  if (!first.pass) return first;
  Outcome second = batch(bounds_b, actions_b);
  if (!second.pass) return second;
  if (bounds_a.size() != bounds_b.size() ||
      std::memcmp(bounds_a.data(), bounds_b.data(),
                  bounds_a.size() * sizeof(double)) != 0)
    return {false, "repeated run produced different bound bytes"};
  if (actions_a != actions_b)
    return {false, "repeated run produced different policies"};
  double mean_gain = 0;
  for (std::size_t i = 0; i < bounds_a.size(); i += 2)
    mean_gain += bounds_a[i + 1] - bounds_a[i];
  mean_gain /= bounds_a.size() / 2;
  return {true, fmt("20 instances, one pass never certifies less (mean gain "
                    "%.4f), repeat run byte-identical",
                    mean_gain)};
}

}  // namespace

int main() {
  const struct {
    const char* name;
    Outcome (*fn)();
  } checks[] = {
      {"tree bound equals joint-product probability", check_oracle_equivalence},
      {"flat and shared storage agree", check_flat_dual_agreement},
      {"pruning stays a lower bound", check_pruning_soundness},
      {"counting guards expand exactly", check_counting_expansion},
      {"automaton matches trace semantics", check_automaton_semantics},
      {"grid benchmark reaches reference bounds", check_benchmark_bounds},
      {"time and memory scale with agents", check_scaling_trends},
      {"policy improvement never certifies less", check_optimization_ascent},
  };
  int failures = 0;
  for (std::size_t i = 0; i < std::size(checks); ++i) {
    Outcome out;
    try {
      out = checks[i].fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    std::printf("criterion %zu: %s  %s%s%s\n", i + 1,
                out.pass ? "PASS" : "FAIL", checks[i].name,
                out.detail.empty() ? "" : " - ", out.detail.c_str());
    std::fflush(stdout);
    failures += !out.pass;
  }
  if (failures) std::printf("%d of 8 criteria failing\n", failures);
  return failures ? 1 : 0;
}
