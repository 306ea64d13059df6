#include "csynth/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "csynth/errors.hpp"

namespace csynth {

using nlohmann::json;

std::string report_to_json_text(const RunOutcome& out) {
  json j;
  j["tool"] = kToolName;
  j["version"] = kToolVersion;
  j["config"] = json::parse(config_to_json_text(out.config));

  j["formula"] = {{"text", out.formula_text},
                  {"atoms", out.atom_text},
                  {"dfa_states", out.dfa_states},
                  {"dfa_transitions", out.dfa_transitions}};

  json cubes;
  cubes["total_cubes"] = out.cube_report.total_cubes;
  cubes["total_letters"] = out.cube_report.total_letters;
  cubes["per_transition"] = json::array();
  for (const CubeCountRow& r : out.cube_report.rows)
    cubes["per_transition"].push_back({{"transition", r.transition},
                                       {"from", r.from},
                                       {"to", r.to},
                                       {"cubes", r.cubes},
                                       {"letters", r.letters}});
  if (!out.transition_cubes.empty()) cubes["detail"] = out.transition_cubes;
  j["cubes"] = std::move(cubes);

  j["iterations"] = json::array();
  for (const IterationRow& r : out.iterations)
    j["iterations"].push_back(
        {{"step", r.iteration},
         {"bound", r.bound},
         {"multi_vertices", r.stats.multi_vertices},
         {"stored_vectors", r.stats.single_vertices},
         {"multi_edges", r.stats.multi_edges},
         {"single_edges", r.stats.single_edges},
         {"pruned", r.stats.pruned_vertices},
         {"resident_bytes", r.stats.resident_bytes},
         {"seconds", r.seconds}});
  j["steps_run"] = out.steps_run;

  j["bounds"] = json::array();
  for (const BoundRow& r : out.bounds) {
    json row = {{"initial", r.initial},
                {"states", r.states},
                {"q_start", r.q_start},
                {"bound", r.bound}};
    if (r.exact) row["exact"] = *r.exact;
    if (r.simulated)
      row["simulated"] = {{"frequency", r.simulated->frequency},
                          {"std_error", r.simulated->std_error},
                          {"successes", r.simulated->successes},
                          {"runs", r.simulated->runs},
                          {"seed", r.simulated->seed}};
    j["bounds"].push_back(std::move(row));
  }

  j["strategy"] = json::parse(strategy_to_json_text(
      out.strategy, out.pool,
      out.action_values.empty() ? nullptr : &out.action_values));

  j["stats"] = {{"depth", out.final_stats.depth},
                {"multi_vertices", out.final_stats.multi_vertices},
                {"stored_vectors", out.final_stats.single_vertices},
                {"multi_edges", out.final_stats.multi_edges},
                {"single_edges", out.final_stats.single_edges},
                {"pruned", out.final_stats.pruned_vertices},
                {"resident_bytes", out.final_stats.resident_bytes},
                {"peak_resident_bytes", out.peak_resident_bytes}};

  j["timing"] = {{"solve_seconds", out.solve_seconds},
                 {"total_seconds", out.total_seconds}};

  json notes = json::array();
  notes.push_back(
      "bounds[].bound is the certified lower bound under the exported "
      "strategy; iterations[].bound is a progress value taken while "
      "policies may still change between steps");
  if (out.bounds.size() > 0 && out.bounds[0].simulated)
    notes.push_back("simulated columns evaluate the exported strategy");
  if (out.abstraction_model)
    notes.push_back(
        "model is a grid abstraction; bounds depend on its resolution, "
        "representative points, and action discretization, so deviations "
        "from published reference values trace back to these parameters");
  j["notes"] = std::move(notes);

  return j.dump(2) + "\n";
}

std::string report_summary(const RunOutcome& out) {
  std::ostringstream os;
  os << kToolName << ' ' << kToolVersion << '\n';
  os << "formula: " << out.formula_text << '\n';
  os << "automaton: " << out.dfa_states << " states, " << out.dfa_transitions
     << " transitions, " << out.atom_text.size() << " atoms\n";
  os << "agents: " << out.config.agents << ", horizon: " << out.config.horizon
     << " (ran " << out.steps_run << "), method: "
     << (out.config.flat ? "flat" : "dual") << '\n';
  os << "cubes: " << out.cube_report.total_cubes << " across "
     << out.cube_report.rows.size() << " transitions\n";
  char buf[64];
  for (const BoundRow& r : out.bounds) {
    os << "bound(";
    for (std::size_t i = 0; i < r.initial.size(); ++i) {
      if (i) os << ", ";
      std::snprintf(buf, sizeof buf, "%g", r.initial[i]);
      os << buf;
    }
    std::snprintf(buf, sizeof buf, "%.6g", r.bound);
    os << ") = " << buf;
    if (r.exact) {
      std::snprintf(buf, sizeof buf, "%.6g", *r.exact);
      os << ", exact " << buf;
    }
    if (r.simulated) {
      std::snprintf(buf, sizeof buf, "%.6g", r.simulated->frequency);
      os << ", simulated " << buf;
      std::snprintf(buf, sizeof buf, "%.2g", r.simulated->std_error);
      os << " (std error " << buf << ")";
    }
    os << '\n';
  }
  const TreeStats& st = out.final_stats;
  os << "tree: " << st.multi_vertices << " vertices, "
     << st.single_vertices << " stored vectors, depth " << st.depth
     << ", pruned " << st.pruned_vertices << '\n';
  std::snprintf(buf, sizeof buf, "%.1f", out.peak_resident_bytes / 1024.0);
  os << "peak memory: " << buf << " KiB";
  std::snprintf(buf, sizeof buf, "%.3f", out.solve_seconds);
  os << ", solve " << buf << " s";
  std::snprintf(buf, sizeof buf, "%.3f", out.total_seconds);
  os << ", total " << buf << " s\n";
  return os.str();
}

void write_text_file_atomic(const std::string& path,
                            const std::string& content) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigError("cannot write " + tmp);
    f << content;
    f.flush();
    if (!f) throw ConfigError("write failed for " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw ConfigError("cannot move report into place at " + path);
}

}  // namespace csynth
