#include "csynth/automaton.hpp"

#include <algorithm>
#include <cassert>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

#include "csynth/bdd.hpp"
#include "csynth/errors.hpp"

namespace csynth {

// ── guard formulas ──────────────────────────────────────────────────

GuardPtr guard_true() {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::True;
  return g;
}

GuardPtr guard_false() {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::False;
  return g;
}

GuardPtr guard_atom(int atom) {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::Atom;
  g->atom = atom;
  return g;
}

GuardPtr guard_not(GuardPtr child) {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::Not;
  g->child = {std::move(child)};
  return g;
}

GuardPtr guard_and(std::vector<GuardPtr> children) {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::And;
  g->child = std::move(children);
  return g;
}

GuardPtr guard_or(std::vector<GuardPtr> children) {
  auto g = std::make_shared<Guard>();
  g->kind = GuardKind::Or;
  g->child = std::move(children);
  return g;
}

bool eval_guard(const Guard& g, std::uint32_t assignment) {
  switch (g.kind) {
    case GuardKind::True: return true;
    case GuardKind::False: return false;
    case GuardKind::Atom: return (assignment >> g.atom) & 1u;
    case GuardKind::Not: return !eval_guard(*g.child[0], assignment);
    case GuardKind::And:
      for (const GuardPtr& c : g.child)
        if (!eval_guard(*c, assignment)) return false;
      return true;
    case GuardKind::Or:
      for (const GuardPtr& c : g.child)
        if (eval_guard(*c, assignment)) return true;
      return false;
  }
  return false;
}

// ── normalized formula algebra for derivative states ────────────────

namespace {

enum class Nk : char { True, False, Atom, NegAtom, And, Or, Next, Until };

struct Nf {
  Nk kind;
  int atom = -1;
  std::vector<int> kids;
};

// Hash-consed normal forms. Conjunctions and disjunctions are flattened,
// sorted and deduplicated, constants absorbed, so most propositionally
// equal derivatives share an id; Hopcroft handles the rest.
class NfBuilder {
 public:
  NfBuilder() {
    tt_ = mk(Nf{Nk::True, -1, {}});
    ff_ = mk(Nf{Nk::False, -1, {}});
  }

  int tt() const { return tt_; }
  int ff() const { return ff_; }
  const Nf& at(int id) const { return pool_[id]; }

  int atom(int a) { return mk(Nf{Nk::Atom, a, {}}); }
  int neg_atom(int a) { return mk(Nf{Nk::NegAtom, a, {}}); }
  int next(int c) {
    if (c == tt_ || c == ff_) return c;
    return mk(Nf{Nk::Next, -1, {c}});
  }
  int until(int l, int r) {
    if (r == tt_ || r == ff_) return r;
    if (l == ff_) return r;
    return mk(Nf{Nk::Until, -1, {l, r}});
  }

  int conj(std::vector<int> kids) { return nary(Nk::And, std::move(kids)); }
  int disj(std::vector<int> kids) { return nary(Nk::Or, std::move(kids)); }

  int derivative(int id, std::uint32_t sigma) {
    const Nf n = pool_[id];
    switch (n.kind) {
      case Nk::True: return tt_;
      case Nk::False: return ff_;
      case Nk::Atom: return ((sigma >> n.atom) & 1u) ? tt_ : ff_;
      case Nk::NegAtom: return ((sigma >> n.atom) & 1u) ? ff_ : tt_;
      case Nk::And:
      case Nk::Or: {
        std::vector<int> kids;
        kids.reserve(n.kids.size());
        for (int k : n.kids) kids.push_back(derivative(k, sigma));
        return n.kind == Nk::And ? conj(std::move(kids))
                                 : disj(std::move(kids));
      }
      case Nk::Next: return n.kids[0];
      case Nk::Until:
        return disj({derivative(n.kids[1], sigma),
                     conj({derivative(n.kids[0], sigma), id})});
    }
    return ff_;
  }

 private:
  int nary(Nk kind, std::vector<int> kids) {
    int neutral = kind == Nk::And ? tt_ : ff_;
    int absorbing = kind == Nk::And ? ff_ : tt_;
    std::vector<int> flat;
    for (int k : kids) {
      if (k == absorbing) return absorbing;
      if (k == neutral) continue;
      if (pool_[k].kind == kind)
        flat.insert(flat.end(), pool_[k].kids.begin(), pool_[k].kids.end());
      else
        flat.push_back(k);
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return neutral;
    if (flat.size() == 1) return flat[0];
    return mk(Nf{kind, -1, std::move(flat)});
  }

  int mk(Nf n) {
    std::string key;
    key.push_back(static_cast<char>(n.kind));
    auto push_int = [&key](int v) {
      for (int b = 0; b < 4; ++b) key.push_back(static_cast<char>(v >> (8 * b)));
    };
    push_int(n.atom);
    for (int k : n.kids) push_int(k);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(pool_.size());
    pool_.push_back(std::move(n));
    index_.emplace(std::move(key), id);
    return id;
  }

  std::vector<Nf> pool_;
  std::unordered_map<std::string, int> index_;
  int tt_ = 0, ff_ = 0;
};

}  // namespace

// ── compile ─────────────────────────────────────────────────────────

namespace {

// Hopcroft partition refinement over an explicit alphabet. Preimages are
// computed by scanning the states; no reverse edge index is kept.
std::vector<int> minimize(const std::vector<std::vector<int>>& succ,
                          int accepting, std::size_t n_sym) {
  int n = static_cast<int>(succ.size());
  std::vector<std::vector<int>> blocks;
  std::vector<int> block_of(n, -1);

  std::vector<int> acc{accepting}, rest;
  for (int s = 0; s < n; ++s)
    if (s != accepting) rest.push_back(s);
  blocks.push_back(acc);
  for (int s : acc) block_of[s] = 0;
  if (!rest.empty()) {
    blocks.push_back(rest);
    for (int s : rest) block_of[s] = 1;
  }

  std::deque<std::pair<int, std::uint32_t>> work;
  std::vector<std::vector<char>> queued(2 * n + 2,
                                        std::vector<char>(n_sym, 0));
  int splitter = blocks.size() == 2 && blocks[1].size() < blocks[0].size() ? 1 : 0;
  for (std::size_t c = 0; c < n_sym; ++c) {
    work.emplace_back(splitter, static_cast<std::uint32_t>(c));
    queued[splitter][c] = 1;
  }

  std::vector<char> in_x(n, 0);
  std::vector<int> touched;
  while (!work.empty()) {
    auto [a, sym] = work.front();
    work.pop_front();
    queued[a][sym] = 0;

    // preimage of block a under sym
    std::vector<int> pre;
    {
      std::vector<char> in_a(n, 0);
      for (int s : blocks[a]) in_a[s] = 1;
      for (int s = 0; s < n; ++s)
        if (in_a[succ[s][sym]]) pre.push_back(s);
    }
    if (pre.empty()) continue;
    for (int s : pre) in_x[s] = 1;

    touched.clear();
    for (int s : pre) {
      int b = block_of[s];
      if (touched.empty() || touched.back() != b) touched.push_back(b);
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());

    for (int b : touched) {
      std::vector<int> inside, outside;
      for (int s : blocks[b])
        (in_x[s] ? inside : outside).push_back(s);
      if (inside.empty() || outside.empty()) continue;
      int nb = static_cast<int>(blocks.size());
      blocks[b] = inside;
      blocks.push_back(outside);
      for (int s : outside) block_of[s] = nb;
      if (static_cast<std::size_t>(nb) >= queued.size())
        queued.resize(queued.size() * 2, std::vector<char>(n_sym, 0));
      for (std::size_t c = 0; c < n_sym; ++c) {
        if (queued[b][c]) {
          work.emplace_back(nb, static_cast<std::uint32_t>(c));
          queued[nb][c] = 1;
        } else {
          int smaller = inside.size() <= outside.size() ? b : nb;
          work.emplace_back(smaller, static_cast<std::uint32_t>(c));
          queued[smaller][c] = 1;
        }
      }
    }
    for (int s : pre) in_x[s] = 0;
  }

  return block_of;
}

// Disjunction of minterms, then back out of the diagram as one literal
// cube per 1-path.
GuardPtr synthesize_guard(const std::vector<std::uint32_t>& assignments,
                          int n_atoms, std::size_t n_sym) {
  if (assignments.size() == n_sym) return guard_true();
  BddManager mgr(n_atoms);
  BddManager::Ref f = BddManager::kFalse;
  for (std::uint32_t sigma : assignments) {
    BddManager::Ref cube = BddManager::kTrue;
    for (int v = n_atoms - 1; v >= 0; --v) {
      cube = ((sigma >> v) & 1u) ? mgr.make_node(v, BddManager::kFalse, cube)
                                 : mgr.make_node(v, cube, BddManager::kFalse);
    }
    f = mgr.bdd_or(f, cube);
  }
  std::vector<GuardPtr> cubes;
  mgr.for_each_cube(f, [&](const std::vector<signed char>& path) {
    std::vector<GuardPtr> lits;
    for (int v = 0; v < n_atoms; ++v) {
      if (path[v] == 1) lits.push_back(guard_atom(v));
      else if (path[v] == 0) lits.push_back(guard_not(guard_atom(v)));
    }
    if (lits.empty()) cubes.push_back(guard_true());
    else if (lits.size() == 1) cubes.push_back(lits[0]);
    else cubes.push_back(guard_and(std::move(lits)));
  });
  if (cubes.empty()) return guard_false();
  if (cubes.size() == 1) return cubes[0];
  return guard_or(std::move(cubes));
}

}  // namespace

Dfa compile_dfa(const Formula& f, const ApSet&) {
  std::vector<CountingProp> atoms = collect_atoms(f);
  if (atoms.size() > 20)
    throw ConfigError("formula has more than 20 distinct counting atoms");
  int k = static_cast<int>(atoms.size());
  std::size_t n_sym = std::size_t{1} << k;

  NfBuilder nf;
  // map each syntactic atom occurrence to its index in `atoms`
  std::function<int(const Formula&)> build = [&](const Formula& g) -> int {
    switch (g.kind) {
      case FormulaKind::True:
        return nf.tt();
      case FormulaKind::Atom:
      case FormulaKind::NegAtom: {
        int idx = -1;
        for (std::size_t i = 0; i < atoms.size(); ++i)
          if (atoms[i].prop == g.prop.prop &&
              atoms[i].threshold == g.prop.threshold)
            idx = static_cast<int>(i);
        return g.kind == FormulaKind::Atom ? nf.atom(idx) : nf.neg_atom(idx);
      }
      case FormulaKind::And:
      case FormulaKind::Or: {
        std::vector<int> kids;
        for (const FormulaPtr& c : g.child) kids.push_back(build(*c));
        return g.kind == FormulaKind::And ? nf.conj(std::move(kids))
                                          : nf.disj(std::move(kids));
      }
      case FormulaKind::Next:
        return nf.next(build(*g.child[0]));
      case FormulaKind::Until: {
        int l = build(*g.child[0]);
        int r = build(*g.child[1]);
        return nf.until(l, r);
      }
    }
    return nf.ff();
  };
  int root = build(f);

  // breadth-first closure under derivatives; True and False are seeded
  // as states so the accepting state exists even when unreachable
  std::vector<int> state_nf{root};
  std::unordered_map<int, int> state_of{{root, 0}};
  for (int extra : {nf.tt(), nf.ff()})
    if (!state_of.count(extra)) {
      state_of.emplace(extra, static_cast<int>(state_nf.size()));
      state_nf.push_back(extra);
    }
  std::vector<std::vector<int>> succ;
  for (std::size_t i = 0; i < state_nf.size(); ++i) {
    succ.emplace_back(n_sym, 0);
    for (std::size_t sigma = 0; sigma < n_sym; ++sigma) {
      int d = nf.derivative(state_nf[i], static_cast<std::uint32_t>(sigma));
      auto it = state_of.find(d);
      int target;
      if (it == state_of.end()) {
        target = static_cast<int>(state_nf.size());
        state_of.emplace(d, target);
        state_nf.push_back(d);
      } else {
        target = it->second;
      }
      succ[i][sigma] = target;
    }
    if (state_nf.size() > 50000)
      throw SolverError("derivative construction exceeded 50000 states");
  }

  int raw_accepting = state_of.at(nf.tt());
  std::vector<int> block_of = minimize(succ, raw_accepting, n_sym);

  // quotient states in breadth-first order from the initial block, with
  // the accepting block kept even when unreachable
  int init_block = block_of[0];
  int acc_block = block_of[raw_accepting];
  int dead_block = block_of[state_of.at(nf.ff())];
  std::vector<int> rep_of_block(state_nf.size(), -1);
  for (int s = static_cast<int>(state_nf.size()) - 1; s >= 0; --s)
    rep_of_block[block_of[s]] = s;

  std::vector<int> final_id(state_nf.size(), -1);  // block -> final state
  std::vector<int> order;
  order.push_back(init_block);
  final_id[init_block] = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int rep = rep_of_block[order[i]];
    for (std::size_t sigma = 0; sigma < n_sym; ++sigma) {
      int tb = block_of[succ[rep][sigma]];
      if (final_id[tb] < 0) {
        final_id[tb] = static_cast<int>(order.size());
        order.push_back(tb);
      }
    }
  }
  if (final_id[acc_block] < 0) {
    final_id[acc_block] = static_cast<int>(order.size());
    order.push_back(acc_block);
  }

  Dfa dfa;
  dfa.atoms = atoms;
  dfa.n_states = static_cast<int>(order.size());
  dfa.initial = 0;
  dfa.accepting = final_id[acc_block];
  dfa.dead = final_id[dead_block] >= 0 && dead_block != acc_block
                 ? final_id[dead_block]
                 : -1;
  dfa.succ.assign(dfa.n_states, std::vector<int>(n_sym, 0));
  for (int q = 0; q < dfa.n_states; ++q) {
    int rep = rep_of_block[order[q]];
    for (std::size_t sigma = 0; sigma < n_sym; ++sigma)
      dfa.succ[q][sigma] = final_id[block_of[succ[rep][sigma]]];
  }

  // aggregate transitions per (from, to)
  dfa.out.assign(dfa.n_states, {});
  dfa.in.assign(dfa.n_states, {});
  std::map<std::pair<int, int>, std::vector<std::uint32_t>> groups;
  for (int q = 0; q < dfa.n_states; ++q)
    for (std::size_t sigma = 0; sigma < n_sym; ++sigma)
      groups[{q, dfa.succ[q][sigma]}].push_back(
          static_cast<std::uint32_t>(sigma));
  for (auto& [key, assignments] : groups) {
    DfaTransition tr;
    tr.from = key.first;
    tr.to = key.second;
    tr.assignments = std::move(assignments);
    tr.guard = synthesize_guard(tr.assignments, k, n_sym);
    int idx = static_cast<int>(dfa.transitions.size());
    dfa.out[tr.from].push_back(idx);
    dfa.in[tr.to].push_back(idx);
    dfa.transitions.push_back(std::move(tr));
  }
  return dfa;
}

std::uint32_t letter_assignment(const JointLetter& letter,
                                const std::vector<CountingProp>& atoms) {
  std::uint32_t sigma = 0;
  for (std::size_t i = 0; i < atoms.size(); ++i)
    if (satisfies(letter, atoms[i])) sigma |= 1u << i;
  return sigma;
}

DfaRun run(const Dfa& dfa, const std::vector<std::uint32_t>& word) {
  DfaRun r;
  int q = dfa.initial;
  for (std::size_t t = 0; t < word.size(); ++t) {
    if (word[t] >= dfa.alphabet_size())
      throw std::invalid_argument("word entry outside the atom alphabet");
    q = dfa.succ[q][word[t]];
    if (q == dfa.accepting && !r.acceptance_index) {
      r.acceptance_index = static_cast<int>(t);
    }
  }
  r.final_state = q;
  return r;
}

// ── printing ────────────────────────────────────────────────────────

namespace {

void print_guard(std::ostream& out, const Guard& g, const Dfa& dfa,
                 const ApSet& ap, bool parens_for_or) {
  switch (g.kind) {
    case GuardKind::True: out << "true"; break;
    case GuardKind::False: out << "false"; break;
    case GuardKind::Atom:
      out << '[' << ap.names[dfa.atoms[g.atom].prop] << ", "
          << dfa.atoms[g.atom].threshold << ']';
      break;
    case GuardKind::Not:
      out << '!';
      if (g.child[0]->kind == GuardKind::And ||
          g.child[0]->kind == GuardKind::Or) {
        out << '(';
        print_guard(out, *g.child[0], dfa, ap, false);
        out << ')';
      } else {
        print_guard(out, *g.child[0], dfa, ap, false);
      }
      break;
    case GuardKind::And:
      for (std::size_t i = 0; i < g.child.size(); ++i) {
        if (i) out << " & ";
        bool wrap = g.child[i]->kind == GuardKind::Or;
        if (wrap) out << '(';
        print_guard(out, *g.child[i], dfa, ap, false);
        if (wrap) out << ')';
      }
      break;
    case GuardKind::Or:
      if (parens_for_or) out << '(';
      for (std::size_t i = 0; i < g.child.size(); ++i) {
        if (i) out << " | ";
        bool wrap = g.child[i]->kind == GuardKind::And;
        if (wrap) out << '(';
        print_guard(out, *g.child[i], dfa, ap, false);
        if (wrap) out << ')';
      }
      if (parens_for_or) out << ')';
      break;
  }
}

}  // namespace

std::string to_string(const Guard& g, const Dfa& dfa, const ApSet& ap) {
  std::ostringstream out;
  print_guard(out, g, dfa, ap, false);
  return out.str();
}

std::string dfa_to_text(const Dfa& dfa, const ApSet& ap) {
  std::ostringstream out;
  out << "states: " << dfa.n_states << '\n';
  out << "initial: " << dfa.initial << '\n';
  out << "accepting: " << dfa.accepting << '\n';
  if (dfa.dead >= 0) out << "dead: " << dfa.dead << '\n';
  out << "atoms:";
  for (const CountingProp& cp : dfa.atoms)
    out << " [" << ap.names[cp.prop] << ", " << cp.threshold << ']';
  out << '\n';
  for (const DfaTransition& tr : dfa.transitions)
    out << tr.from << " -> " << tr.to << "  "
        << to_string(*tr.guard, dfa, ap) << '\n';
  return out.str();
}

}  // namespace csynth
