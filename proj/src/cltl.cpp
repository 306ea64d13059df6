#include "csynth/cltl.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace csynth {

int ApSet::index(const std::string& name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  return -1;
}

ApSet make_ap_set(std::vector<std::string> names) {
  if (names.empty())
    throw std::invalid_argument("proposition set must be nonempty");
  if (names.size() > 32)
    throw std::invalid_argument("at most 32 atomic propositions supported");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty())
      throw std::invalid_argument("empty proposition name");
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw std::invalid_argument("duplicate proposition name: " + names[i]);
  }
  return ApSet{std::move(names)};
}

int JointLetter::count(int prop) const {
  int n = 0;
  for (Letter l : agent) n += (l >> prop) & 1u;
  return n;
}

bool satisfies(const JointLetter& letter, const CountingProp& cp) {
  return letter.count(cp.prop) >= cp.threshold;
}

FormulaPtr make_true() {
  auto f = std::make_shared<Formula>();
  f->kind = FormulaKind::True;
  return f;
}

static FormulaPtr make_leaf(FormulaKind kind, CountingProp cp) {
  if (cp.threshold < 0)
    throw std::invalid_argument("negative counting threshold");
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->prop = cp;
  return f;
}

FormulaPtr make_atom(CountingProp cp) {
  return make_leaf(FormulaKind::Atom, cp);
}

FormulaPtr make_neg_atom(CountingProp cp) {
  return make_leaf(FormulaKind::NegAtom, cp);
}

static FormulaPtr make_nary(FormulaKind kind,
                            std::vector<FormulaPtr> children) {
  if (children.size() < 2)
    throw std::invalid_argument("conjunction/disjunction needs two operands");
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->child = std::move(children);
  return f;
}

FormulaPtr make_and(std::vector<FormulaPtr> children) {
  return make_nary(FormulaKind::And, std::move(children));
}

FormulaPtr make_or(std::vector<FormulaPtr> children) {
  return make_nary(FormulaKind::Or, std::move(children));
}

FormulaPtr make_next(FormulaPtr f) {
  auto g = std::make_shared<Formula>();
  g->kind = FormulaKind::Next;
  g->child = {std::move(f)};
  return g;
}

FormulaPtr make_until(FormulaPtr lhs, FormulaPtr rhs) {
  auto g = std::make_shared<Formula>();
  g->kind = FormulaKind::Until;
  g->child = {std::move(lhs), std::move(rhs)};
  return g;
}

// ── parser ──────────────────────────────────────────────────────────

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  int here() {
    skip_ws();
    return static_cast<int>(pos);
  }
  bool eat(char c) {
    skip_ws();
    if (pos < text.size() && text[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c, const char* what) {
    if (!eat(c))
      throw ParseError(std::string("expected ") + what, here());
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) ||
            text[pos] == '_'))
      ++pos;
    if (start == pos)
      throw ParseError("expected identifier", static_cast<int>(start));
    return text.substr(start, pos - start);
  }
  long integer() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (start == pos)
      throw ParseError("expected integer", static_cast<int>(start));
    return std::stol(text.substr(start, pos - start));
  }
};

struct Parser {
  Lexer lex;
  const ApSet& ap;
  int n_agents;

  FormulaPtr parse_or() {
    std::vector<FormulaPtr> parts{parse_and()};
    while (lex.peek() == '|') {
      lex.eat('|');
      parts.push_back(parse_and());
    }
    return parts.size() == 1 ? parts[0] : make_or(std::move(parts));
  }

  FormulaPtr parse_and() {
    std::vector<FormulaPtr> parts{parse_until()};
    while (lex.peek() == '&') {
      lex.eat('&');
      parts.push_back(parse_until());
    }
    return parts.size() == 1 ? parts[0] : make_and(std::move(parts));
  }

  FormulaPtr parse_until() {
    FormulaPtr lhs = parse_unary();
    lex.skip_ws();
    if (keyword('U')) return make_until(std::move(lhs), parse_until());
    return lhs;
  }

  // Single-letter operator followed by a non-identifier character.
  bool keyword(char c) {
    lex.skip_ws();
    if (lex.pos >= lex.text.size() || lex.text[lex.pos] != c) return false;
    if (lex.pos + 1 < lex.text.size()) {
      char next = lex.text[lex.pos + 1];
      if (std::isalnum(static_cast<unsigned char>(next)) || next == '_')
        return false;
    }
    ++lex.pos;
    return true;
  }

  FormulaPtr parse_unary() {
    int at = lex.here();
    if (lex.peek() == '!') {
      lex.eat('!');
      FormulaPtr inner = parse_unary();
      if (inner->kind != FormulaKind::Atom)
        throw ParseError("negation is only allowed on a counting atom", at);
      return make_neg_atom(inner->prop);
    }
    if (keyword('X')) return make_next(parse_unary());
    if (keyword('F')) return make_until(make_true(), parse_unary());
    return parse_primary();
  }

  FormulaPtr parse_primary() {
    int at = lex.here();
    if (lex.eat('(')) {
      FormulaPtr inner = parse_or();
      lex.expect(')', "')'");
      return inner;
    }
    if (lex.peek() == '[') return parse_atom();
    throw ParseError("expected a counting atom or '('", at);
  }

  FormulaPtr parse_atom() {
    lex.expect('[', "'['");
    int name_at = lex.here();
    std::string name = lex.ident();
    int prop = ap.index(name);
    if (prop < 0)
      throw ParseError("undeclared proposition: " + name, name_at);
    lex.expect(',', "','");
    int m = parse_threshold();
    lex.expect(']', "']'");
    return make_atom(CountingProp{prop, m});
  }

  int parse_threshold() {
    int at = lex.here();
    if (keyword('N')) {
      if (lex.peek() == '/') {
        lex.eat('/');
        long k = lex.integer();
        if (k <= 0) throw ParseError("threshold divisor must be positive", at);
        return static_cast<int>(n_agents / k);
      }
      return n_agents;
    }
    long m = lex.integer();
    if (m < 0 || m > 1'000'000)
      throw ParseError("threshold out of range", at);
    return static_cast<int>(m);
  }
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const ApSet& ap,
                         int n_agents) {
  if (n_agents < 1) throw std::invalid_argument("agent count must be >= 1");
  Parser p{Lexer{text}, ap, n_agents};
  FormulaPtr f = p.parse_or();
  if (!p.lex.at_end())
    throw ParseError("unexpected trailing input", p.lex.here());
  return f;
}

// ── printing ────────────────────────────────────────────────────────

namespace {

// Looser constructs get parenthesized when nested under tighter ones.
int print_rank(FormulaKind k) {
  switch (k) {
    case FormulaKind::Or: return 0;
    case FormulaKind::And: return 1;
    case FormulaKind::Until: return 2;
    default: return 3;
  }
}

void print(std::ostream& out, const Formula& f, const ApSet& ap, int parent_rank) {
  int rank = print_rank(f.kind);
  bool paren = rank < parent_rank;
  if (paren) out << '(';
  switch (f.kind) {
    case FormulaKind::True:
      out << "true";
      break;
    case FormulaKind::Atom:
      out << '[' << ap.names[f.prop.prop] << ", " << f.prop.threshold << ']';
      break;
    case FormulaKind::NegAtom:
      out << "![" << ap.names[f.prop.prop] << ", " << f.prop.threshold << ']';
      break;
    case FormulaKind::And:
    case FormulaKind::Or:
      for (std::size_t i = 0; i < f.child.size(); ++i) {
        if (i) out << (f.kind == FormulaKind::And ? " & " : " | ");
        print(out, *f.child[i], ap, rank + 1);
      }
      break;
    case FormulaKind::Next:
      out << "X ";
      print(out, *f.child[0], ap, rank);
      break;
    case FormulaKind::Until:
      if (f.child[0]->kind == FormulaKind::True) {
        out << "F ";
        print(out, *f.child[1], ap, 3);
      } else {
        print(out, *f.child[0], ap, rank + 1);
        out << " U ";
        print(out, *f.child[1], ap, rank);  // right associative
      }
      break;
  }
  if (paren) out << ')';
}

}  // namespace

std::string to_string(const Formula& f, const ApSet& ap) {
  std::ostringstream out;
  print(out, f, ap, 0);
  return out.str();
}

std::vector<CountingProp> collect_atoms(const Formula& f) {
  std::vector<CountingProp> atoms;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind == FormulaKind::Atom || g.kind == FormulaKind::NegAtom) {
      for (const CountingProp& cp : atoms)
        if (cp.prop == g.prop.prop && cp.threshold == g.prop.threshold)
          return;
      atoms.push_back(g.prop);
      return;
    }
    for (const FormulaPtr& c : g.child) walk(*c);
  };
  walk(f);
  return atoms;
}

// ── bounded trace semantics ─────────────────────────────────────────

namespace {

// Pessimistic semantics on a finite prefix: true iff every infinite
// extension of word[0..len) satisfies f at position t. An atom past the
// end of the prefix is unresolved, hence false here.
template <typename AtomAt>
bool forced(const Formula& f, int t, int len, const AtomAt& atom_at) {
  switch (f.kind) {
    case FormulaKind::True:
      return true;
    case FormulaKind::Atom:
      return t < len && atom_at(t, f.prop);
    case FormulaKind::NegAtom:
      return t < len && !atom_at(t, f.prop);
    case FormulaKind::And:
      for (const FormulaPtr& c : f.child)
        if (!forced(*c, t, len, atom_at)) return false;
      return true;
    case FormulaKind::Or:
      for (const FormulaPtr& c : f.child)
        if (forced(*c, t, len, atom_at)) return true;
      return false;
    case FormulaKind::Next:
      return forced(*f.child[0], t + 1, len, atom_at);
    case FormulaKind::Until:
      for (int i = t; i < len; ++i) {
        if (forced(*f.child[1], i, len, atom_at)) return true;
        if (!forced(*f.child[0], i, len, atom_at)) return false;
      }
      return false;
  }
  return false;
}

template <typename AtomAt>
std::optional<int> scan_prefixes(int length, const Formula& f,
                                 const AtomAt& atom_at) {
  for (int t = 0; t < length; ++t)
    if (forced(f, 0, t + 1, atom_at)) return t;
  return std::nullopt;
}

}  // namespace

std::optional<int> witness_index(const std::vector<JointLetter>& trace,
                                 const Formula& f) {
  if (trace.empty()) throw std::invalid_argument("trace must be nonempty");
  auto atom_at = [&](int t, const CountingProp& cp) {
    return satisfies(trace[t], cp);
  };
  return scan_prefixes(static_cast<int>(trace.size()), f, atom_at);
}

std::optional<int> witness_index_assignments(
    const std::vector<std::uint32_t>& word, const Formula& f,
    const std::vector<CountingProp>& atoms) {
  if (word.empty()) throw std::invalid_argument("word must be nonempty");
  auto atom_at = [&](int t, const CountingProp& cp) {
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if (atoms[i].prop == cp.prop && atoms[i].threshold == cp.threshold)
        return ((word[t] >> i) & 1u) != 0;
    throw std::invalid_argument("atom missing from assignment universe");
  };
  return scan_prefixes(static_cast<int>(word.size()), f, atom_at);
}

}  // namespace csynth
