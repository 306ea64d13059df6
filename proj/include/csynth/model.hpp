#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "csynth/cltl.hpp"

namespace csynth {

// Finite MDP for one agent. All agents share the same dynamics and
// labeling; they differ only in their initial state.
struct SingleAgentMdp {
  int n_actions = 0;
  std::vector<Letter> label;               // state -> letter over the AP set
  std::vector<std::vector<double>> trans;  // [action][x * n_states + x']
  std::vector<double> repr;  // representative coordinate per state; may be empty

  int n_states() const { return static_cast<int>(label.size()); }
  double prob(int action, int from, int to) const {
    return trans[action][static_cast<std::size_t>(from) * label.size() + to];
  }

  // throws ConfigError on negative entries or row sums off by > tol
  void validate(double tol = 1e-12) const;
};

JointLetter joint_label(const SingleAgentMdp& mdp, const std::vector<int>& xs);

struct LabelInterval {
  std::string name;
  double lo = 0;
  double hi = 0;  // half open [lo, hi)
};

// 1-D double integrator surrogate: position cells on [lo, hi], one
// absorbing out-of-range state, Gaussian motion noise.
struct Abstraction1dConfig {
  double lo = -10.0;
  double hi = 10.0;
  int n_cells = 100;
  double action_lo = -2.0;
  double action_hi = 2.0;
  int n_actions = 21;
  double sigma = 1.0;
  std::vector<LabelInterval> props;
};

struct Abstraction1d {
  SingleAgentMdp mdp;
  ApSet ap;
  Abstraction1dConfig cfg;

  int sink() const { return cfg.n_cells; }
  double cell_center(int cell) const;
  // cell index for a continuous position; out of range -> sink
  int cell_of(double x) const;
};

Abstraction1d abstract_1d_gaussian(const Abstraction1dConfig& cfg);

// uniform transition rows and i.i.d. per-prop labels, for test instances
SingleAgentMdp random_mdp(std::mt19937_64& rng, int n_states, int n_actions,
                          int n_props, double label_density = 0.4);

std::string mdp_to_json(const SingleAgentMdp& mdp);
SingleAgentMdp mdp_from_json(const std::string& text);

}  // namespace csynth
