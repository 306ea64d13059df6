#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "csynth/model.hpp"
#include "csynth/policy.hpp"

namespace csynth {

struct OracleConfig {
  bool monolithic = false;
  std::size_t budget = 1000000;  // product table entry cap
  std::uint64_t runs = 0;        // 0 disables simulation
  std::uint64_t seed = 1;
};

struct ModelConfig {
  enum class Kind { Abstraction, File };
  Kind kind = Kind::Abstraction;
  Abstraction1dConfig abstraction;
  std::string path;                     // File: model document
  std::vector<std::string> prop_names;  // File: names for label bits
};

struct RunConfig {
  ModelConfig model;
  std::string formula;
  int agents = 1;
  int horizon = 10;
  double theta_product = 1e-6;
  double theta_single = 1e-4;
  SharingMode sharing = SharingMode::FullyShared;
  std::vector<int> groups;  // per agent, Grouped mode only
  int sweeps = 1;           // policy optimization passes per step
  // joint initial states: positions for abstraction models, state
  // indices for file models; one bound per entry
  std::vector<std::vector<double>> initial;
  OracleConfig oracle;
  std::string out = "report.json";
  bool flat = false;  // store per-(vertex, agent) vectors, no sharing
  std::size_t max_stored_vectors = 0;
  int var_cap = 64;
  bool verbose_cubes = false;
  std::string strategy_file;  // evaluate an exported strategy, no ascent
  std::vector<int> sweep_agent_counts;   // nonempty: agent sweep mode
  std::vector<std::string> sweep_methods{"dual"};

  void validate() const;
};

RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::string& path);
std::string config_to_json_text(const RunConfig& cfg);

std::string read_text_file(const std::string& path);

}  // namespace csynth
