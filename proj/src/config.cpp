#include "csynth/config.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "csynth/errors.hpp"

namespace csynth {

using nlohmann::json;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void RunConfig::validate() const {
  if (formula.empty()) throw ConfigError("no formula given");
  if (agents < 1) throw ConfigError("agent count must be at least 1");
  if (horizon < 1) throw ConfigError("horizon must be at least 1");
  if (theta_product < 0 || theta_product > 1)
    throw ConfigError("prune-product threshold must lie in [0,1]");
  if (theta_single < 0 || theta_single > 1)
    throw ConfigError("prune-single threshold must lie in [0,1]");
  if (sweeps < 0) throw ConfigError("sweeps must be nonnegative");
  if (var_cap < 1) throw ConfigError("variable cap must be positive");
  if (model.kind == ModelConfig::Kind::File && model.path.empty())
    throw ConfigError("file model needs a path");
  if (sweep_agent_counts.empty()) {
    if (initial.empty()) throw ConfigError("no initial states given");
    for (const auto& js : initial)
      if (static_cast<int>(js.size()) != agents)
        throw ConfigError("each initial state needs one entry per agent");
  } else {
    if (initial.empty())
      throw ConfigError("agent sweep needs an initial position pool");
    int prev = 0;
    for (int n : sweep_agent_counts) {
      if (n < 1) throw ConfigError("sweep agent counts must be positive");
      if (n < prev) throw ConfigError("sweep agent counts must be nondecreasing");
      prev = n;
    }
    for (const auto& m : sweep_methods)
      if (m != "dual" && m != "flat")
        throw ConfigError("sweep methods are 'dual' and 'flat'");
    if (sweep_methods.empty()) throw ConfigError("no sweep methods given");
  }
  if (sharing == SharingMode::Grouped &&
      static_cast<int>(groups.size()) != agents)
    throw ConfigError("grouped sharing needs one group index per agent");
}

namespace {

void parse_model(const json& j, ModelConfig& m) {
  std::string kind = j.value("kind", std::string("abstraction"));
  if (kind == "abstraction") {
    m.kind = ModelConfig::Kind::Abstraction;
    auto& a = m.abstraction;
    a.lo = j.value("lo", a.lo);
    a.hi = j.value("hi", a.hi);
    a.n_cells = j.value("cells", a.n_cells);
    a.action_lo = j.value("action_lo", a.action_lo);
    a.action_hi = j.value("action_hi", a.action_hi);
    a.n_actions = j.value("actions", a.n_actions);
    a.sigma = j.value("sigma", a.sigma);
    a.props.clear();
    for (const auto& p : j.value("props", json::array())) {
      LabelInterval li;
      li.name = p.at("name").get<std::string>();
      li.lo = p.at("lo").get<double>();
      li.hi = p.at("hi").get<double>();
      a.props.push_back(li);
    }
  } else if (kind == "file") {
    m.kind = ModelConfig::Kind::File;
    m.path = j.at("path").get<std::string>();
    m.prop_names = j.value("props", std::vector<std::string>{});
  } else {
    throw ConfigError("unknown model kind '" + kind + "'");
  }
}

std::vector<std::vector<double>> parse_initial(const json& j) {
  std::vector<std::vector<double>> out;
  if (j.empty()) return out;
  if (j.front().is_array()) {
    for (const auto& row : j) out.push_back(row.get<std::vector<double>>());
  } else {
    out.push_back(j.get<std::vector<double>>());
  }
  return out;
}

}  // namespace

RunConfig config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config JSON: ") + e.what());
  }
  RunConfig cfg;
  try {
    if (j.contains("model")) parse_model(j["model"], cfg.model);
    cfg.formula = j.value("formula", cfg.formula);
    cfg.agents = j.value("agents", cfg.agents);
    cfg.horizon = j.value("horizon", cfg.horizon);
    cfg.theta_product = j.value("prune_product", cfg.theta_product);
    cfg.theta_single = j.value("prune_single", cfg.theta_single);
    if (j.contains("sharing"))
      cfg.sharing = parse_sharing_mode(j["sharing"].get<std::string>());
    cfg.groups = j.value("groups", cfg.groups);
    cfg.sweeps = j.value("sweeps", cfg.sweeps);
    if (j.contains("initial")) cfg.initial = parse_initial(j["initial"]);
    if (j.contains("oracle")) {
      const auto& o = j["oracle"];
      cfg.oracle.monolithic = o.value("monolithic", cfg.oracle.monolithic);
      cfg.oracle.budget = o.value("budget", cfg.oracle.budget);
      cfg.oracle.runs = o.value("runs", cfg.oracle.runs);
      cfg.oracle.seed = o.value("seed", cfg.oracle.seed);
    }
    cfg.out = j.value("out", cfg.out);
    if (j.contains("method")) {
      std::string m = j["method"].get<std::string>();
      if (m == "flat")
        cfg.flat = true;
      else if (m == "dual")
        cfg.flat = false;
      else
        throw ConfigError("unknown method '" + m + "'");
    }
    cfg.max_stored_vectors = j.value("max_stored_vectors",
                                     cfg.max_stored_vectors);
    cfg.var_cap = j.value("var_cap", cfg.var_cap);
    cfg.verbose_cubes = j.value("verbose_cubes", cfg.verbose_cubes);
    cfg.strategy_file = j.value("strategy", cfg.strategy_file);
    cfg.sweep_agent_counts = j.value("sweep_agents", cfg.sweep_agent_counts);
    cfg.sweep_methods = j.value("sweep_methods", cfg.sweep_methods);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  return config_from_json(read_text_file(path));
}

std::string config_to_json_text(const RunConfig& cfg) {
  json j;
  json m;
  if (cfg.model.kind == ModelConfig::Kind::Abstraction) {
    const auto& a = cfg.model.abstraction;
    m["kind"] = "abstraction";
    m["lo"] = a.lo;
    m["hi"] = a.hi;
    m["cells"] = a.n_cells;
    m["action_lo"] = a.action_lo;
    m["action_hi"] = a.action_hi;
    m["actions"] = a.n_actions;
    m["sigma"] = a.sigma;
    m["props"] = json::array();
    for (const auto& p : a.props)
      m["props"].push_back({{"name", p.name}, {"lo", p.lo}, {"hi", p.hi}});
  } else {
    m["kind"] = "file";
    m["path"] = cfg.model.path;
    m["props"] = cfg.model.prop_names;
  }
  j["model"] = m;
  j["formula"] = cfg.formula;
  j["agents"] = cfg.agents;
  j["horizon"] = cfg.horizon;
  j["prune_product"] = cfg.theta_product;
  j["prune_single"] = cfg.theta_single;
  j["sharing"] = to_string(cfg.sharing);
  if (!cfg.groups.empty()) j["groups"] = cfg.groups;
  j["sweeps"] = cfg.sweeps;
  j["initial"] = cfg.initial;
  j["oracle"] = {{"monolithic", cfg.oracle.monolithic},
                 {"budget", cfg.oracle.budget},
                 {"runs", cfg.oracle.runs},
                 {"seed", cfg.oracle.seed}};
  j["out"] = cfg.out;
  j["method"] = cfg.flat ? "flat" : "dual";
  j["max_stored_vectors"] = cfg.max_stored_vectors;
  j["var_cap"] = cfg.var_cap;
  j["verbose_cubes"] = cfg.verbose_cubes;
  if (!cfg.strategy_file.empty()) j["strategy"] = cfg.strategy_file;
  if (!cfg.sweep_agent_counts.empty()) {
    j["sweep_agents"] = cfg.sweep_agent_counts;
    j["sweep_methods"] = cfg.sweep_methods;
  }
  return j.dump(2);
}

}  // namespace csynth
