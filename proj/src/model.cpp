#include "csynth/model.hpp"

#include <cmath>
#include <cstddef>

#include "json.hpp"

#include "csynth/errors.hpp"

namespace csynth {

void SingleAgentMdp::validate(double tol) const {
  std::size_t n = label.size();
  if (n == 0) throw ConfigError("model has no states");
  if (n_actions <= 0) throw ConfigError("model has no actions");
  if (trans.size() != static_cast<std::size_t>(n_actions))
    throw ConfigError("transition table does not match action count");
  for (int a = 0; a < n_actions; ++a) {
    if (trans[a].size() != n * n)
      throw ConfigError("transition matrix for action " + std::to_string(a) +
                        " has wrong size");
    for (std::size_t x = 0; x < n; ++x) {
      double sum = 0;
      for (std::size_t y = 0; y < n; ++y) {
        double p = trans[a][x * n + y];
        if (p < 0)
          throw ConfigError("negative transition probability at action " +
                            std::to_string(a) + ", state " + std::to_string(x));
        sum += p;
      }
      if (std::abs(sum - 1.0) > tol)
        throw ConfigError("transition row sums to " + std::to_string(sum) +
                          " at action " + std::to_string(a) + ", state " +
                          std::to_string(x));
    }
  }
}

JointLetter joint_label(const SingleAgentMdp& mdp, const std::vector<int>& xs) {
  JointLetter jl;
  jl.agent.reserve(xs.size());
  for (int x : xs) jl.agent.push_back(mdp.label[x]);
  return jl;
}

double Abstraction1d::cell_center(int cell) const {
  double width = (cfg.hi - cfg.lo) / cfg.n_cells;
  return cfg.lo + (cell + 0.5) * width;
}

int Abstraction1d::cell_of(double x) const {
  if (x < cfg.lo || x >= cfg.hi) return sink();
  double width = (cfg.hi - cfg.lo) / cfg.n_cells;
  int cell = static_cast<int>((x - cfg.lo) / width);
  if (cell < 0) cell = 0;
  if (cell >= cfg.n_cells) cell = cfg.n_cells - 1;
  return cell;
}

namespace {

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace

Abstraction1d abstract_1d_gaussian(const Abstraction1dConfig& cfg) {
  if (cfg.n_cells < 2) throw ConfigError("abstraction needs at least two cells");
  if (cfg.n_actions < 1)
    throw ConfigError("abstraction needs at least one action");
  if (!(cfg.hi > cfg.lo)) throw ConfigError("abstraction range is empty");
  if (!(cfg.sigma > 0)) throw ConfigError("noise sigma must be positive");

  Abstraction1d out;
  out.cfg = cfg;
  std::vector<std::string> names;
  for (const auto& p : cfg.props) names.push_back(p.name);
  out.ap = make_ap_set(names);

  int n = cfg.n_cells + 1;  // trailing absorbing out-of-range state
  out.mdp.n_actions = cfg.n_actions;
  out.mdp.label.assign(n, 0);
  out.mdp.repr.assign(n, 0.0);
  for (int cell = 0; cell < cfg.n_cells; ++cell) {
    double c = out.cell_center(cell);
    out.mdp.repr[cell] = c;
    for (std::size_t p = 0; p < cfg.props.size(); ++p)
      if (c >= cfg.props[p].lo && c < cfg.props[p].hi)
        out.mdp.label[cell] |= Letter{1} << p;
  }
  out.mdp.repr[cfg.n_cells] = cfg.hi + (cfg.hi - cfg.lo);

  double width = (cfg.hi - cfg.lo) / cfg.n_cells;
  out.mdp.trans.assign(cfg.n_actions,
                       std::vector<double>(static_cast<std::size_t>(n) * n, 0.0));
  for (int k = 0; k < cfg.n_actions; ++k) {
    double a = cfg.n_actions == 1
                   ? cfg.action_lo
                   : cfg.action_lo + k * (cfg.action_hi - cfg.action_lo) /
                                         (cfg.n_actions - 1);
    auto& mat = out.mdp.trans[k];
    for (int x = 0; x < cfg.n_cells; ++x) {
      double mean = out.cell_center(x) + a;
      double prev = normal_cdf((cfg.lo - mean) / cfg.sigma);
      double interior = 0;
      for (int y = 0; y < cfg.n_cells; ++y) {
        double next = normal_cdf((cfg.lo + (y + 1) * width - mean) / cfg.sigma);
        double p = next - prev;
        if (p < 0) p = 0;
        mat[static_cast<std::size_t>(x) * n + y] = p;
        interior += p;
        prev = next;
      }
      double escape = 1.0 - interior;
      mat[static_cast<std::size_t>(x) * n + cfg.n_cells] =
          escape > 0 ? escape : 0.0;
    }
    mat[static_cast<std::size_t>(cfg.n_cells) * n + cfg.n_cells] = 1.0;
  }
  out.mdp.validate();
  return out;
}

SingleAgentMdp random_mdp(std::mt19937_64& rng, int n_states, int n_actions,
                          int n_props, double label_density) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  SingleAgentMdp mdp;
  mdp.n_actions = n_actions;
  mdp.label.assign(n_states, 0);
  for (int x = 0; x < n_states; ++x)
    for (int p = 0; p < n_props; ++p)
      if (unit(rng) < label_density) mdp.label[x] |= Letter{1} << p;
  mdp.trans.assign(n_actions,
                   std::vector<double>(static_cast<std::size_t>(n_states) *
                                       n_states));
  for (int a = 0; a < n_actions; ++a)
    for (int x = 0; x < n_states; ++x) {
      double sum = 0;
      for (int y = 0; y < n_states; ++y) {
        double w = 0.05 + unit(rng);
        mdp.trans[a][static_cast<std::size_t>(x) * n_states + y] = w;
        sum += w;
      }
      for (int y = 0; y < n_states; ++y)
        mdp.trans[a][static_cast<std::size_t>(x) * n_states + y] /= sum;
    }
  return mdp;
}

std::string mdp_to_json(const SingleAgentMdp& mdp) {
  nlohmann::json j;
  j["n_actions"] = mdp.n_actions;
  j["labels"] = mdp.label;
  j["trans"] = mdp.trans;
  if (!mdp.repr.empty()) j["repr"] = mdp.repr;
  return j.dump(2);
}

SingleAgentMdp mdp_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model JSON: ") + e.what());
  }
  SingleAgentMdp mdp;
  try {
    mdp.n_actions = j.at("n_actions").get<int>();
    mdp.label = j.at("labels").get<std::vector<Letter>>();
    mdp.trans = j.at("trans").get<std::vector<std::vector<double>>>();
    if (j.contains("repr")) mdp.repr = j["repr"].get<std::vector<double>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bad model JSON: ") + e.what());
  }
  if (!mdp.repr.empty() && mdp.repr.size() != mdp.label.size())
    throw ConfigError("representative list does not match state count");
  mdp.validate(1e-9);
  return mdp;
}

}  // namespace csynth
