#ifndef PCGS_GRAMMAR_HPP
#define PCGS_GRAMMAR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcgs/symbols.hpp"

namespace pcgs {

// One context-free production. The right-hand side may be empty and may mix
// nonterminals, terminals and query symbols.
struct Production {
  SymbolId lhs = 0;
  Word rhs;

  bool operator==(const Production& o) const { return lhs == o.lhs && rhs == o.rhs; }
  bool operator<(const Production& o) const {
    if (lhs != o.lhs) return lhs < o.lhs;
    return rhs < o.rhs;
  }
};

struct Component {
  Word axiom;  // nonempty, nonterminals only
  std::vector<Production> productions;
};

enum class Mode : std::uint8_t { kReturning, kNonReturning };

// A parallel communicating grammar system. Components rewrite synchronously;
// the master component's terminal strings form the generated language.
struct PCGSystem {
  SymbolTable symbols;
  std::vector<Component> components;
  std::uint32_t master = 0;  // 0-based component index
  Mode mode = Mode::kNonReturning;

  std::uint32_t component_count() const { return static_cast<std::uint32_t>(components.size()); }
};

bool operator==(const PCGSystem& a, const PCGSystem& b);

// One string per component.
struct Configuration {
  std::vector<Word> strings;

  bool operator==(const Configuration& o) const { return strings == o.strings; }
};

// 128-bit fingerprint used for visited-set deduplication. Collisions are
// astronomically unlikely at the budgets the engine accepts.
struct Fingerprint {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
  bool operator==(const Fingerprint& o) const { return lo == o.lo && hi == o.hi; }
};

struct FingerprintHash {
  std::size_t operator()(const Fingerprint& f) const { return static_cast<std::size_t>(f.lo ^ (f.hi * 0x9e3779b97f4a7c15ULL)); }
};

Fingerprint fingerprint(const Configuration& c);

struct Violation {
  int component = -1;   // -1 when not tied to a component
  int production = -1;  // -1 when not tied to a production
  std::string message;
};

std::string format(const Violation& v);

// Structural well-formedness: disjoint alphabets, nonterminal left-hand
// sides, nonterminal-only nonempty axioms, master in range, one query symbol
// per component. Returns every violation found; empty means valid.
std::vector<Violation> validate(const PCGSystem& system);

// The tuple of axiom words.
Configuration initial_configuration(const PCGSystem& system);

// Sorts productions by (lhs, rhs) and removes exact duplicates. All compiled
// and parsed systems are kept in this canonical order; successor enumeration
// and file emission inherit their determinism from it.
void canonicalize(Component& component);

bool terminal_only(const SymbolTable& t, const Word& w);
bool has_query(const SymbolTable& t, const Word& w);
bool has_nonterminal(const SymbolTable& t, const Word& w);
std::size_t count_terminals(const SymbolTable& t, const Word& w);

}  // namespace pcgs

#endif
