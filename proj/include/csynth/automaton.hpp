#pragma once

// Deterministic finite automata over truth assignments to a formula's
// counting atoms. A formula compiles to a total minimal DFA with one
// absorbing accepting state; a word is accepted exactly when it is a
// minimal witness of the formula, so the acceptance index of a run equals
// the witness index of the word.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "csynth/cltl.hpp"

namespace csynth {

enum class GuardKind { True, False, Atom, Not, And, Or };

struct Guard;
using GuardPtr = std::shared_ptr<const Guard>;

// Boolean formula over the DFA's counting atoms (atom = index into
// Dfa::atoms).
struct Guard {
  GuardKind kind = GuardKind::True;
  int atom = -1;
  std::vector<GuardPtr> child;
};

GuardPtr guard_true();
GuardPtr guard_false();
GuardPtr guard_atom(int atom);
GuardPtr guard_not(GuardPtr g);
GuardPtr guard_and(std::vector<GuardPtr> children);
GuardPtr guard_or(std::vector<GuardPtr> children);

bool eval_guard(const Guard& g, std::uint32_t assignment);

// One transition per (from, to) pair with at least one assignment; the
// guard is the disjunction of exactly those assignments. Guards of
// distinct transitions leaving one state are therefore pairwise
// unsatisfiable, and together the transitions out of a state cover every
// assignment.
struct DfaTransition {
  int from = 0;
  int to = 0;
  GuardPtr guard;
  std::vector<std::uint32_t> assignments;  // ascending
};

struct Dfa {
  std::vector<CountingProp> atoms;  // alphabet = 2^atoms, at most 20
  int n_states = 0;
  int initial = 0;
  int accepting = 0;  // absorbing; unreachable iff the language is empty
  int dead = -1;      // absorbing reject sink, -1 when absent
  std::vector<std::vector<int>> succ;  // [state][assignment]
  std::vector<DfaTransition> transitions;
  std::vector<std::vector<int>> out;  // state -> transition indices
  std::vector<std::vector<int>> in;   // state -> transition indices

  std::size_t alphabet_size() const { return std::size_t{1} << atoms.size(); }
  int step(int state, std::uint32_t assignment) const {
    return succ[state][assignment];
  }
};

// Derivative construction over the free assignment alphabet followed by
// Hopcroft minimization. Rejects formulas with more than 20 distinct
// counting atoms (the alphabet is enumerated explicitly).
Dfa compile_dfa(const Formula& f, const ApSet& ap);

// Truth assignment of the DFA's atoms under a joint letter.
std::uint32_t letter_assignment(const JointLetter& letter,
                                const std::vector<CountingProp>& atoms);

struct DfaRun {
  int final_state = 0;
  std::optional<int> acceptance_index;  // first t with state(t+1) accepting
};

DfaRun run(const Dfa& dfa, const std::vector<std::uint32_t>& word);

std::string to_string(const Guard& g, const Dfa& dfa, const ApSet& ap);
std::string dfa_to_text(const Dfa& dfa, const ApSet& ap);

}  // namespace csynth
