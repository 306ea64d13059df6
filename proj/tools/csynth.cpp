#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "csynth/cltl.hpp"
#include "csynth/config.hpp"
#include "csynth/errors.hpp"
#include "csynth/report.hpp"
#include "csynth/synthesis.hpp"

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) continue;
    parts.push_back(item.substr(a, b - a + 1));
  }
  return parts;
}

std::vector<int> parse_agent_list(const std::string& text) {
  std::vector<int> ns;
  for (const std::string& p : split_list(text)) {
    try {
      std::size_t used = 0;
      int n = std::stoi(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
      ns.push_back(n);
    } catch (const std::exception&) {
      throw csynth::ConfigError("bad agent count in --sweep: " + p);
    }
  }
  if (ns.empty()) throw csynth::ConfigError("--sweep needs agent counts");
  return ns;
}

int run(const csynth::RunConfig& cfg) {
  if (!cfg.sweep_agent_counts.empty()) {
    std::vector<csynth::SweepRow> rows = csynth::sweep_agents(cfg);
    csynth::write_text_file_atomic(cfg.out, csynth::sweep_to_csv(rows));
    for (const csynth::SweepRow& r : rows) {
      std::cout << "N=" << r.agents << " " << r.method << ": " << r.status;
      if (r.status == "ok")
        std::cout << " bound " << r.bound << ", " << r.stored_vectors
                  << " vectors, " << r.peak_resident_bytes / 1024 << " KiB, "
                  << r.seconds << " s";
      else if (!r.detail.empty())
        std::cout << " (" << r.detail << ")";
      std::cout << "\n";
    }
    std::cout << rows.size() << " rows written to " << cfg.out << "\n";
    return 0;
  }
  csynth::RunOutcome outcome = csynth::run_synthesis(cfg);
  csynth::write_text_file_atomic(cfg.out, csynth::report_to_json_text(outcome));
  std::cout << csynth::report_summary(outcome);
  std::cout << "report written to " << cfg.out << "\n";
  return 0;
}

const char kConfigHelp[] = R"(config file keys (JSON) and defaults:
  formula        (required) specification text, e.g. "(![p1,N/2]) U [p2,N/3]"
  agents         1
  horizon        10
  prune_product  1e-6      leaf score threshold
  prune_single   1e-4      per-agent max threshold
  sharing        "shared"  or "grouped" / "per-agent"
  groups         []        per-agent group ids, grouped sharing only
  sweeps         1         policy improvement passes per step, 0 = fixed
  method         "dual"    or "flat"
  model          {"abstraction": {lo,hi,cells,action_lo,action_hi,actions,
                  sigma,props:[{name,lo,hi}]}} or {"file": path, "props": [...]}
                 defaults: lo -10, hi 10, cells 100, actions 21 on [-2,2],
                 sigma 1
  initial        []        joint initial states, one bound row each
  oracle         {"monolithic": false, "budget": 1000000,
                  "runs": 0, "seed": 1}
  out            "report.json"
  max_stored_vectors  0    0 = unlimited
  var_cap        64        expansion variable limit
  verbose_cubes  false     list every cube in the report
  strategy       ""        evaluate this exported strategy file, no ascent
  sweep_agents   []        agent counts; nonempty switches to sweep mode
  sweep_methods  ["dual"]  methods per sweep point)";

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"decoupled strategy synthesis under counting specifications"};
  app.set_version_flag("--version", csynth::kToolVersion);
  app.footer(kConfigHelp);

  std::string config_path, formula, out, sweep_list, method;
  int agents = 0;
  int horizon = 0;
  double prune_product = 0;
  double prune_single = 0;
  std::uint64_t runs = 0;
  std::uint64_t seed = 0;

  CLI::Option* o_config =
      app.add_option("--config", config_path, "config file (JSON)");
  CLI::Option* o_formula =
      app.add_option("--formula", formula, "specification text");
  CLI::Option* o_agents = app.add_option("--agents", agents, "agent count");
  CLI::Option* o_horizon =
      app.add_option("--horizon", horizon, "growth steps (default 10)");
  CLI::Option* o_pp = app.add_option(
      "--prune-product", prune_product,
      "leaf score pruning threshold (default 1e-6, 0 disables)");
  CLI::Option* o_ps = app.add_option(
      "--prune-single", prune_single,
      "per-agent max pruning threshold (default 1e-4, 0 disables)");
  CLI::Option* o_runs = app.add_option(
      "--runs", runs, "simulation runs for the exported strategy (default 0)");
  CLI::Option* o_seed =
      app.add_option("--seed", seed, "simulation seed (default 1)");
  CLI::Option* o_out = app.add_option(
      "--out", out, "output path, report JSON or sweep CSV (default report.json)");
  CLI::Option* o_sweep = app.add_option(
      "--sweep", sweep_list,
      "comma list of agent counts; switches to sweep mode, CSV output");
  CLI::Option* o_method = app.add_option(
      "--method", method,
      "dual or flat; in sweep mode a comma list runs both (default dual)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    csynth::RunConfig cfg;
    if (*o_config) cfg = csynth::load_config(config_path);
    if (*o_formula) cfg.formula = formula;
    if (*o_agents) cfg.agents = agents;
    if (*o_horizon) cfg.horizon = horizon;
    if (*o_pp) cfg.theta_product = prune_product;
    if (*o_ps) cfg.theta_single = prune_single;
    if (*o_runs) cfg.oracle.runs = runs;
    if (*o_seed) cfg.oracle.seed = seed;
    if (*o_out) cfg.out = out;
    if (*o_sweep) cfg.sweep_agent_counts = parse_agent_list(sweep_list);
    if (*o_method) {
      std::vector<std::string> ms = split_list(method);
      if (ms.empty()) throw csynth::ConfigError("--method needs a value");
      if (!cfg.sweep_agent_counts.empty()) {
        cfg.sweep_methods = ms;
      } else {
        if (ms.size() != 1 || (ms[0] != "dual" && ms[0] != "flat"))
          throw csynth::ConfigError("--method must be dual or flat");
        cfg.flat = ms[0] == "flat";
      }
    }
    return run(cfg);
  } catch (const csynth::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const csynth::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const csynth::BudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const csynth::SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
