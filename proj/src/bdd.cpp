#include "csynth/bdd.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace csynth {

namespace {

constexpr std::uint32_t kRefBits = 28;
constexpr std::uint32_t kRefMask = (1u << kRefBits) - 1;

std::uint64_t node_key(int var, BddManager::Ref lo, BddManager::Ref hi) {
  return (static_cast<std::uint64_t>(var) << (2 * kRefBits)) |
         (static_cast<std::uint64_t>(lo) << kRefBits) | hi;
}

std::uint64_t pair_key(BddManager::Ref a, BddManager::Ref b) {
  if (a > b) std::swap(a, b);  // and/or are commutative
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

BddManager::BddManager(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 0 || n_vars > 200)
    throw std::invalid_argument("BDD variable count out of range");
  // terminal var index sits one past the last real variable
  nodes_.push_back(Node{n_vars_, kFalse, kFalse});  // 0 = false
  nodes_.push_back(Node{n_vars_, kTrue, kTrue});    // 1 = true
}

BddManager::Ref BddManager::make_node(int v, Ref lo, Ref hi) {
  assert(v >= 0 && v < n_vars_);
  assert(node_var(lo) > v && node_var(hi) > v);
  if (lo == hi) return lo;
  std::uint64_t key = node_key(v, lo, hi);
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  if (nodes_.size() > kRefMask)
    throw std::runtime_error("BDD node table overflow");
  Ref r = static_cast<Ref>(nodes_.size());
  nodes_.push_back(Node{v, lo, hi});
  unique_.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::var(int v) { return make_node(v, kFalse, kTrue); }

BddManager::Ref BddManager::nvar(int v) { return make_node(v, kTrue, kFalse); }

BddManager::Ref BddManager::apply(Ref a, Ref b, bool is_and) {
  if (a == b) return a;
  if (is_and) {
    if (a == kFalse || b == kFalse) return kFalse;
    if (a == kTrue) return b;
    if (b == kTrue) return a;
  } else {
    if (a == kTrue || b == kTrue) return kTrue;
    if (a == kFalse) return b;
    if (b == kFalse) return a;
  }
  auto& cache = is_and ? and_cache_ : or_cache_;
  std::uint64_t key = pair_key(a, b);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  int va = node_var(a), vb = node_var(b);
  int v = va < vb ? va : vb;
  Ref a_lo = va == v ? node_lo(a) : a;
  Ref a_hi = va == v ? node_hi(a) : a;
  Ref b_lo = vb == v ? node_lo(b) : b;
  Ref b_hi = vb == v ? node_hi(b) : b;
  Ref lo = apply(a_lo, b_lo, is_and);
  Ref hi = apply(a_hi, b_hi, is_and);
  Ref r = make_node(v, lo, hi);
  cache.emplace(key, r);
  return r;
}

BddManager::Ref BddManager::bdd_and(Ref a, Ref b) { return apply(a, b, true); }

BddManager::Ref BddManager::bdd_or(Ref a, Ref b) { return apply(a, b, false); }

BddManager::Ref BddManager::bdd_not(Ref a) {
  if (a == kFalse) return kTrue;
  if (a == kTrue) return kFalse;
  auto it = not_cache_.find(a);
  if (it != not_cache_.end()) return it->second;
  Ref r = make_node(node_var(a), bdd_not(node_lo(a)), bdd_not(node_hi(a)));
  not_cache_.emplace(a, r);
  return r;
}

double BddManager::sat_count(Ref r) const {
  // counts[x] = assignments of variables below node_var(x) satisfying x
  std::unordered_map<Ref, double> memo;
  std::function<double(Ref)> below = [&](Ref x) -> double {
    if (x == kFalse) return 0.0;
    if (x == kTrue) return 1.0;
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    const Node& n = nodes_[x];
    double lo = below(n.lo) * std::exp2(node_var(n.lo) - n.var - 1);
    double hi = below(n.hi) * std::exp2(node_var(n.hi) - n.var - 1);
    double total = lo + hi;
    memo.emplace(x, total);
    return total;
  };
  return below(r) * std::exp2(node_var(r));
}

void BddManager::for_each_cube(
    Ref r,
    const std::function<void(const std::vector<signed char>&)>& fn) const {
  std::vector<signed char> path(n_vars_, -1);
  std::function<void(Ref)> walk = [&](Ref x) {
    if (x == kFalse) return;
    if (x == kTrue) {
      fn(path);
      return;
    }
    const Node& n = nodes_[x];
    path[n.var] = 0;
    walk(n.lo);
    path[n.var] = 1;
    walk(n.hi);
    path[n.var] = -1;
  };
  walk(r);
}

bool BddManager::eval(Ref r, const std::vector<bool>& assignment) const {
  while (!is_terminal(r)) {
    const Node& n = nodes_[r];
    r = assignment[n.var] ? n.hi : n.lo;
  }
  return r == kTrue;
}

}  // namespace csynth
