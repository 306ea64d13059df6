#pragma once

// Reduced ordered binary decision diagrams with a shared unique table.
// Small fixed-order engine: enough for threshold functions over a few
// dozen variables and the Boolean combinations the guard expansion needs.
// Node ids are assigned in creation order, so identical build sequences
// produce identical ids; canonicity means two equivalent functions built
// in the same manager share one id.

#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

namespace csynth {

class BddManager {
 public:
  using Ref = std::uint32_t;
  static constexpr Ref kFalse = 0;
  static constexpr Ref kTrue = 1;

  explicit BddManager(int n_vars);

  int var_count() const { return n_vars_; }

  Ref var(int v);       // the function "variable v is true"
  Ref nvar(int v);      // its complement

  Ref bdd_and(Ref a, Ref b);
  Ref bdd_or(Ref a, Ref b);
  Ref bdd_not(Ref a);

  // Node with branch variable v; both children may only test variables
  // strictly below v in the order. lo is the v=false branch.
  Ref make_node(int v, Ref lo, Ref hi);

  bool is_terminal(Ref r) const { return r <= kTrue; }
  int node_var(Ref r) const { return nodes_[r].var; }
  Ref node_lo(Ref r) const { return nodes_[r].lo; }
  Ref node_hi(Ref r) const { return nodes_[r].hi; }
  std::size_t node_count() const { return nodes_.size(); }

  // Number of satisfying assignments over the full variable space. Exact
  // until it exceeds 2^53.
  double sat_count(Ref r) const;

  // Visit every 1-path. The callback sees one entry per variable:
  // 0 / 1 for a constrained variable, -1 for one the path skips.
  // Distinct 1-paths are disjoint as sets of assignments and together
  // they cover the satisfying set exactly.
  void for_each_cube(
      Ref r, const std::function<void(const std::vector<signed char>&)>& fn) const;

  bool eval(Ref r, const std::vector<bool>& assignment) const;

 private:
  struct Node {
    int var;
    Ref lo, hi;
  };

  Ref apply(Ref a, Ref b, bool is_and);

  int n_vars_;
  std::vector<Node> nodes_;
  std::unordered_map<std::uint64_t, Ref> unique_;
  std::unordered_map<std::uint64_t, Ref> and_cache_, or_cache_;
  std::unordered_map<Ref, Ref> not_cache_;
};

}  // namespace csynth
