#include "pcgs/grammar.hpp"

#include <algorithm>
#include <unordered_set>

namespace pcgs {

bool operator==(const PCGSystem& a, const PCGSystem& b) {
  if (!(a.symbols == b.symbols) || a.master != b.master || a.mode != b.mode) return false;
  if (a.components.size() != b.components.size()) return false;
  for (std::size_t i = 0; i < a.components.size(); ++i) {
    if (a.components[i].axiom != b.components[i].axiom) return false;
    if (a.components[i].productions != b.components[i].productions) return false;
  }
  return true;
}

namespace {

inline std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Fingerprint fingerprint(const Configuration& c) {
  // Two independently seeded streams; each symbol and each string boundary
  // feeds both.
  std::uint64_t a = 0x243f6a8885a308d3ULL;
  std::uint64_t b = 0x13198a2e03707344ULL;
  for (const Word& w : c.strings) {
    for (SymbolId s : w) {
      a = mix(a ^ (s + 1));
      b = mix(b + ((static_cast<std::uint64_t>(s) + 1) << 17));
    }
    a = mix(a ^ 0xa4093822299f31d0ULL);
    b = mix(b ^ 0x082efa98ec4e6c89ULL);
  }
  return Fingerprint{a, b};
}

std::string format(const Violation& v) {
  std::string out;
  if (v.component >= 0) {
    out += "component " + std::to_string(v.component + 1);
    if (v.production >= 0) out += ", production " + std::to_string(v.production + 1);
    out += ": ";
  }
  out += v.message;
  return out;
}

std::vector<Violation> validate(const PCGSystem& system) {
  std::vector<Violation> out;
  const SymbolTable& t = system.symbols;

  if (system.components.empty()) {
    out.push_back({-1, -1, "system has no components"});
    return out;
  }
  if (system.master >= system.components.size()) {
    out.push_back({-1, -1, "master index out of range"});
  }
  if (t.query_count() != system.components.size()) {
    out.push_back({-1, -1, "query symbol count does not match component count"});
  }

  // Kind disjointness: a name registered under two kinds appears twice.
  std::unordered_set<std::string> seen;
  for (SymbolId id = 0; id < t.size(); ++id) {
    if (!seen.insert(t.name(id)).second) {
      out.push_back({-1, -1, "symbol '" + t.name(id) + "' registered under more than one kind"});
    }
  }

  for (std::size_t ci = 0; ci < system.components.size(); ++ci) {
    const Component& comp = system.components[ci];
    if (comp.axiom.empty()) {
      out.push_back({static_cast<int>(ci), -1, "empty axiom"});
    }
    for (SymbolId s : comp.axiom) {
      if (s >= t.size()) {
        out.push_back({static_cast<int>(ci), -1, "axiom symbol id out of range"});
      } else if (!t.is_nonterminal(s)) {
        out.push_back({static_cast<int>(ci), -1, "axiom symbol '" + t.name(s) + "' is not a nonterminal"});
      }
    }
    for (std::size_t pi = 0; pi < comp.productions.size(); ++pi) {
      const Production& p = comp.productions[pi];
      if (p.lhs >= t.size() || !t.is_nonterminal(p.lhs)) {
        out.push_back({static_cast<int>(ci), static_cast<int>(pi), "left-hand side is not a nonterminal"});
      }
      for (SymbolId s : p.rhs) {
        if (s >= t.size()) {
          out.push_back({static_cast<int>(ci), static_cast<int>(pi), "right-hand side symbol id out of range"});
          break;
        }
      }
    }
  }
  return out;
}

Configuration initial_configuration(const PCGSystem& system) {
  Configuration c;
  c.strings.reserve(system.components.size());
  for (const Component& comp : system.components) c.strings.push_back(comp.axiom);
  return c;
}

void canonicalize(Component& component) {
  std::sort(component.productions.begin(), component.productions.end());
  component.productions.erase(std::unique(component.productions.begin(), component.productions.end()),
                              component.productions.end());
}

bool terminal_only(const SymbolTable& t, const Word& w) {
  for (SymbolId s : w) {
    if (!t.is_terminal(s)) return false;
  }
  return true;
}

bool has_query(const SymbolTable& t, const Word& w) {
  for (SymbolId s : w) {
    if (t.is_query(s)) return true;
  }
  return false;
}

bool has_nonterminal(const SymbolTable& t, const Word& w) {
  for (SymbolId s : w) {
    if (t.is_nonterminal(s)) return true;
  }
  return false;
}

std::size_t count_terminals(const SymbolTable& t, const Word& w) {
  std::size_t n = 0;
  for (SymbolId s : w) {
    if (t.is_terminal(s)) ++n;
  }
  return n;
}

}  // namespace pcgs
