#pragma once

// Syntactically co-safe counting LTL over a small set of atomic
// propositions. Formulas talk about how many agents currently satisfy a
// proposition: the counting atom [p, m] holds on a joint letter iff at
// least m of the per-agent letters contain p.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace csynth {

// Proposition universe shared by every agent. At most 32 names so a
// single-agent letter fits in one mask word.
struct ApSet {
  std::vector<std::string> names;

  int index(const std::string& name) const;
  std::size_t size() const { return names.size(); }
};

ApSet make_ap_set(std::vector<std::string> names);

using Letter = std::uint32_t;  // subset of ApSet, bit i = names[i]

struct JointLetter {
  std::vector<Letter> agent;  // one letter per agent

  int count(int prop) const;
};

// Counting atom [p, m]: at least m agents' letters contain p.
struct CountingProp {
  int prop = 0;        // index into ApSet
  int threshold = 0;   // m >= 0; m = 0 always holds
};

bool satisfies(const JointLetter& letter, const CountingProp& cp);

enum class FormulaKind { True, Atom, NegAtom, And, Or, Next, Until };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
  FormulaKind kind = FormulaKind::True;
  CountingProp prop;              // Atom, NegAtom
  std::vector<FormulaPtr> child;  // And/Or n-ary, Next 1, Until 2
};

FormulaPtr make_true();
FormulaPtr make_atom(CountingProp cp);
FormulaPtr make_neg_atom(CountingProp cp);
FormulaPtr make_and(std::vector<FormulaPtr> children);
FormulaPtr make_or(std::vector<FormulaPtr> children);
FormulaPtr make_next(FormulaPtr f);
FormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs);

struct ParseError : std::runtime_error {
  int position;  // byte offset into the formula text

  ParseError(const std::string& what, int pos)
      : std::runtime_error(what), position(pos) {}
};

// Concrete grammar, binding tightest to loosest: ! X F, then U (right
// associative), then &, then |. Negation is only legal directly on a
// counting atom. F mu is expanded to True U mu while parsing. Thresholds
// may be written as a literal, as N, or as N/k (integer floor division);
// n_agents supplies the value of N.
FormulaPtr parse_formula(const std::string& text, const ApSet& ap,
                         int n_agents);

std::string to_string(const Formula& f, const ApSet& ap);

// Distinct counting atoms in syntactic first-appearance order.
std::vector<CountingProp> collect_atoms(const Formula& f);

// Minimal witness prefix: the smallest t such that every infinite
// extension of trace[0..t] satisfies f, or nullopt if no prefix of the
// trace commits. Unresolved Next/Until obligations at the end of a prefix
// count as not witnessed. The trace must be nonempty.
std::optional<int> witness_index(const std::vector<JointLetter>& trace,
                                 const Formula& f);

// Same semantics over raw truth assignments to the formula's counting
// atoms (bit i of a word entry = truth of atoms[i]). This is the oracle
// the automaton construction is checked against.
std::optional<int> witness_index_assignments(
    const std::vector<std::uint32_t>& word, const Formula& f,
    const std::vector<CountingProp>& atoms);

}  // namespace csynth
