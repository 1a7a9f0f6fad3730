#include "pcgs/construct.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace pcgs {

std::string sigma(int action, Guard store) {
  if (store == Guard::kBlank) {
    switch (action) {
      case 1: return "AA";
      case 0: return "A";
      case -1: return "";
      default: break;
    }
  } else {
    switch (action) {
      case 1: return "A";
      case 0: return "";
      case -1: throw std::domain_error("no counter word for a decrement under a zero guard");
      default: break;
    }
  }
  throw std::invalid_argument("counter action must be -1, 0, or +1");
}

bool validate_final_normal_form(const CounterMachine& m) {
  for (const CounterRule& r : m.rules) {
    if (r.to != m.final_state) continue;
    for (Guard g : r.guards) {
      if (g != Guard::kZero) return false;
    }
    for (std::int8_t a : r.actions) {
      if (a != 0) return false;
    }
  }
  return true;
}

namespace {

bool looks_like_query(const std::string& name) {
  if (name.size() < 2 || name[0] != 'Q') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

void require_compilable(const CounterMachine& m, const char* who) {
  const std::vector<std::string> problems = validate(m);
  if (!problems.empty()) {
    throw std::invalid_argument(std::string(who) + ": invalid machine: " + problems.front());
  }
  if (!validate_final_normal_form(m)) {
    throw std::invalid_argument(std::string(who) +
                                ": rules entering the final state must test every counter "
                                "for zero and leave it unchanged");
  }
  for (const CounterRule& r : m.rules) {
    if (r.read == kReadBlank) {
      throw std::invalid_argument(std::string(who) + ": blank reads cannot be compiled");
    }
  }
}

// Interns the alphabet after the nonterminal inventory so that clashes with
// generated names surface here instead of as a malformed system later.
void intern_terminals(SymbolTable& tab, const CounterMachine& m, const char* who) {
  for (const std::string& a : m.alphabet) {
    if (tab.find(a).has_value() || looks_like_query(a)) {
      throw std::invalid_argument(std::string(who) + ": input symbol '" + a +
                                  "' collides with a grammar symbol");
    }
    tab.add_terminal(a);
  }
}

}  // namespace

PCGSystem compile_theorem1(const CounterMachine& m) {
  require_compilable(m, "compile_theorem1");
  if (m.counters != 2) {
    throw std::invalid_argument("compile_theorem1 requires exactly two counters");
  }

  PCGSystem sys;
  SymbolTable& tab = sys.symbols;
  const std::size_t k = m.rules.size();

  std::vector<SymbolId> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = tab.add_nonterminal("t" + std::to_string(i));
  const SymbolId S = tab.add_nonterminal("S");
  const SymbolId A = tab.add_nonterminal("A");
  const SymbolId Z = tab.add_nonterminal("Z");
  const SymbolId F = tab.add_nonterminal("F");
  const SymbolId Fp = tab.add_nonterminal("F'");
  const SymbolId Fpp = tab.add_nonterminal("F''");
  const SymbolId Fppp = tab.add_nonterminal("F'''");
  const SymbolId C1 = tab.add_nonterminal("C1");
  const SymbolId C2 = tab.add_nonterminal("C2");
  const SymbolId M0 = tab.add_nonterminal("M0");
  const SymbolId M1 = tab.add_nonterminal("M1");
  const SymbolId M2 = tab.add_nonterminal("M2");
  std::vector<SymbolId> D1(k), D2(k), E1(k), E2(k), H1(k), H2(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string a = "t" + std::to_string(i);
    D1[i] = tab.add_nonterminal("D1[" + a + "]");
    D2[i] = tab.add_nonterminal("D2[" + a + "]");
    E1[i] = tab.add_nonterminal("E1[" + a + "]");
    E2[i] = tab.add_nonterminal("E2[" + a + "]");
    H1[i] = tab.add_nonterminal("H1[" + a + "]");
    H2[i] = tab.add_nonterminal("H2[" + a + "]");
  }
  std::vector<SymbolId> term(m.alphabet.size());
  intern_terminals(tab, m, "compile_theorem1");
  for (std::size_t i = 0; i < m.alphabet.size(); ++i) term[i] = *tab.find(m.alphabet[i]);
  tab.set_component_count(6);

  const SymbolId Qsel = tab.query_symbol(0);
  const SymbolId Qc1 = tab.query_symbol(2);
  const SymbolId Qc2 = tab.query_symbol(3);
  const SymbolId Qch1 = tab.query_symbol(4);
  const SymbolId Qch2 = tab.query_symbol(5);

  sys.components.resize(6);
  for (Component& c : sys.components) c.axiom = {S};
  sys.master = 1;
  sys.mode = Mode::kNonReturning;

  auto add = [&](std::size_t comp, SymbolId lhs, Word rhs) {
    sys.components[comp].productions.push_back(Production{lhs, std::move(rhs)});
  };
  auto counter_word = [&](SymbolId query, int action, Guard store) {
    Word rhs{query};
    rhs.insert(rhs.end(), sigma(action, store).size(), A);
    return rhs;
  };

  // Selector: guesses the run, one transition per phase.
  for (std::size_t i = 0; i < k; ++i) {
    if (m.rules[i].from == m.start) add(0, S, {t[i]});
    add(0, t[i], {D1[i]});
    add(0, D1[i], {D2[i]});
    for (std::size_t j = 0; j < k; ++j) {
      if (m.rules[i].to == m.rules[j].from) add(0, D2[i], {t[j]});
    }
    if (m.rules[i].to == m.final_state) add(0, D2[i], {F});
  }
  add(0, F, {F});

  // Master: emits the symbol each transition reads, then erases the
  // bookkeeping it collects from the other components at the end.
  add(1, S, {Qsel});
  add(1, C1, {C2});
  add(1, C2, {Qsel});
  add(1, F, {Fp});
  add(1, Fp, {Qch1, Qc1, Qc2});
  for (std::size_t i = 0; i < k; ++i) {
    Word rhs;
    if (m.rules[i].read >= 0) rhs.push_back(term[static_cast<std::size_t>(m.rules[i].read)]);
    rhs.push_back(C1);
    add(1, t[i], std::move(rhs));
    add(1, H2[i], {});
  }
  add(1, M1, {});
  add(1, Z, {});
  add(1, Fpp, {});
  add(1, Fppp, {});

  // Counters: value = number of A's. A nonempty counter spends one A per
  // phase to prove it is nonempty, then restores it plus the increment.
  for (std::size_t comp = 2; comp <= 3; ++comp) {
    const std::uint32_t counter = static_cast<std::uint32_t>(comp - 1);
    add(comp, S, {Qsel, Z});
    add(comp, A, {Qch2});
    add(comp, F, {Fpp});
    add(comp, Fpp, {Fpp});
    for (std::size_t i = 0; i < k; ++i) {
      const Guard g = m.rules[i].guards[counter - 1];
      const int e = m.rules[i].actions[counter - 1];
      if (g == Guard::kBlank) {
        add(comp, t[i], {Qsel});
        add(comp, D2[i], counter_word(Qsel, e, Guard::kBlank));
      } else {
        add(comp, t[i], {H1[i]});
        add(comp, H1[i], {H2[i]});
        add(comp, H2[i], counter_word(Qsel, e, Guard::kZero));
      }
    }
  }

  // Checker: pulls every counter claimed empty; a pulled counter that still
  // holds an A poisons the derivation because the master cannot erase A.
  add(4, S, {Qsel});
  for (std::size_t i = 0; i < k; ++i) {
    add(4, t[i], {E1[i]});
    Word rhs{E2[i]};
    if (m.rules[i].guards[0] == Guard::kZero) rhs.push_back(Qc1);
    if (m.rules[i].guards[1] == Guard::kZero) rhs.push_back(Qc2);
    add(4, E1[i], std::move(rhs));
    add(4, E2[i], {Qsel});
  }
  add(4, F, {Fppp});
  add(4, Fppp, {Fppp});

  // Clock: three-step cycle the counters consult to prove they spent their
  // A at the first step of the phase and nowhere else.
  add(5, S, {M0});
  add(5, M0, {M1});
  add(5, M1, {M2});
  add(5, M2, {M0});

  for (Component& c : sys.components) canonicalize(c);
  return sys;
}

PCGSystem compile_universal(const CounterMachine& m) {
  require_compilable(m, "compile_universal");
  if (m.counters == 0) throw std::invalid_argument("compile_universal requires at least one counter");

  PCGSystem sys;
  SymbolTable& tab = sys.symbols;
  const std::size_t k = m.rules.size();
  const std::uint32_t n = m.counters;

  std::vector<SymbolId> t(k);
  for (std::size_t i = 0; i < k; ++i) t[i] = tab.add_nonterminal("t" + std::to_string(i));
  const SymbolId S = tab.add_nonterminal("S");
  const SymbolId A = tab.add_nonterminal("A");
  const SymbolId Z = tab.add_nonterminal("Z");
  const SymbolId F = tab.add_nonterminal("F");
  const SymbolId Fp = tab.add_nonterminal("F'");
  const SymbolId Fpp = tab.add_nonterminal("F''");
  const SymbolId Fppp = tab.add_nonterminal("F'''");
  const SymbolId C1 = tab.add_nonterminal("C1");
  const SymbolId C2 = tab.add_nonterminal("C2");
  const SymbolId C3 = tab.add_nonterminal("C3");
  const SymbolId M0 = tab.add_nonterminal("M0");
  const SymbolId M1 = tab.add_nonterminal("M1");
  const SymbolId M2 = tab.add_nonterminal("M2");
  const SymbolId M3 = tab.add_nonterminal("M3");
  const SymbolId K0 = tab.add_nonterminal("K0");
  const SymbolId K1 = tab.add_nonterminal("K1");
  const SymbolId K2 = tab.add_nonterminal("K2");
  const SymbolId K[3] = {K0, K1, K2};
  const SymbolId H1a0 = tab.add_nonterminal("H1[a0]");
  const SymbolId H1a1 = tab.add_nonterminal("H1[a1]");
  const SymbolId H2a0 = tab.add_nonterminal("H2[a0]");
  const SymbolId H2a1 = tab.add_nonterminal("H2[a1]");
  std::vector<SymbolId> NX(m.states.size());
  for (std::size_t q = 0; q < m.states.size(); ++q) {
    NX[q] = tab.add_nonterminal("NX[" + m.states[q] + "]");
  }
  std::vector<SymbolId> D1(k), D2(k);
  for (std::size_t i = 0; i < k; ++i) {
    const std::string a = "t" + std::to_string(i);
    D1[i] = tab.add_nonterminal("D1[" + a + "]");
    D2[i] = tab.add_nonterminal("D2[" + a + "]");
  }

  // Guard patterns, one checker family per distinct pattern rather than per
  // transition, interned in first-occurrence order.
  auto pattern_of = [&](const CounterRule& r) {
    std::string p(n, 'Z');
    for (std::uint32_t j = 0; j < n; ++j) {
      if (r.guards[j] == Guard::kBlank) p[j] = 'B';
    }
    return p;
  };
  std::vector<std::string> patterns;
  std::vector<std::size_t> pattern_of_rule(k);
  std::unordered_map<std::string, std::size_t> pattern_index;
  for (std::size_t i = 0; i < k; ++i) {
    const std::string p = pattern_of(m.rules[i]);
    auto it = pattern_index.find(p);
    if (it == pattern_index.end()) {
      it = pattern_index.emplace(p, patterns.size()).first;
      patterns.push_back(p);
    }
    pattern_of_rule[i] = it->second;
  }
  std::vector<SymbolId> E1(patterns.size()), E2(patterns.size()), E3(patterns.size());
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    E1[p] = tab.add_nonterminal("E1[" + patterns[p] + "]");
    E2[p] = tab.add_nonterminal("E2[" + patterns[p] + "]");
    E3[p] = tab.add_nonterminal("E3[" + patterns[p] + "]");
  }

  std::vector<SymbolId> term(m.alphabet.size());
  intern_terminals(tab, m, "compile_universal");
  for (std::size_t i = 0; i < m.alphabet.size(); ++i) term[i] = *tab.find(m.alphabet[i]);

  const std::uint32_t components = n + 4;
  tab.set_component_count(components);
  const SymbolId Qsel = tab.query_symbol(0);
  const SymbolId Qch1 = tab.query_symbol(components - 2);
  const SymbolId Qch2 = tab.query_symbol(components - 1);
  auto Qc = [&](std::uint32_t counter) { return tab.query_symbol(component_for_counter(counter)); };

  sys.components.resize(components);
  for (Component& c : sys.components) c.axiom = {S};
  sys.master = 1;
  sys.mode = Mode::kNonReturning;

  auto add = [&](std::size_t comp, SymbolId lhs, Word rhs) {
    sys.components[comp].productions.push_back(Production{lhs, std::move(rhs)});
  };

  // Selector: the extra NX hop keeps the rule count linear by resolving the
  // next transition through the target state instead of pairing transitions.
  for (std::size_t i = 0; i < k; ++i) {
    if (m.rules[i].from == m.start) add(0, S, {t[i]});
    add(0, t[i], {D1[i]});
    add(0, D1[i], {D2[i]});
    add(0, D2[i], {NX[m.rules[i].to]});
    add(0, NX[m.rules[i].from], {t[i]});
  }
  add(0, NX[m.final_state], {F});
  add(0, F, {F});

  // Master.
  add(1, S, {Qsel});
  add(1, C1, {C2});
  add(1, C2, {C3});
  add(1, C3, {Qsel});
  add(1, F, {Fp});
  {
    Word pull{Qch1};
    for (std::uint32_t j = 1; j <= n; ++j) pull.push_back(Qc(j));
    add(1, Fp, std::move(pull));
  }
  for (std::size_t i = 0; i < k; ++i) {
    Word rhs;
    if (m.rules[i].read >= 0) rhs.push_back(term[static_cast<std::size_t>(m.rules[i].read)]);
    rhs.push_back(C1);
    add(1, t[i], std::move(rhs));
  }
  add(1, H2a0, {});
  add(1, H2a1, {});
  add(1, M1, {});
  add(1, Z, {});
  add(1, Fpp, {});
  add(1, Fppp, {});

  // Counters: the K symbols defer the emission so that every branch reaches
  // its query at the fourth step of the phase.
  for (std::uint32_t j = 1; j <= n; ++j) {
    const std::size_t comp = component_for_counter(j);
    add(comp, S, {Qsel, Z});
    add(comp, A, {Qch2});
    add(comp, F, {Fpp});
    add(comp, Fpp, {Fpp});
    add(comp, K0, {Qsel});
    add(comp, K1, {Qsel, A});
    add(comp, K2, {Qsel, A, A});
    add(comp, H1a0, {H2a0});
    add(comp, H1a1, {H2a1});
    add(comp, H2a0, {K0});
    add(comp, H2a1, {K1});
    for (std::size_t i = 0; i < k; ++i) {
      const Guard g = m.rules[i].guards[j - 1];
      const int e = m.rules[i].actions[j - 1];
      if (g == Guard::kBlank) {
        add(comp, t[i], {Qsel});
        add(comp, D2[i], {K[1 + e]});
      } else {
        add(comp, t[i], {e == 1 ? H1a1 : H1a0});
      }
    }
  }

  // Checker, keyed on guard patterns.
  const std::size_t ch1 = components - 2;
  add(ch1, S, {Qsel});
  for (std::size_t i = 0; i < k; ++i) add(ch1, t[i], {E1[pattern_of_rule[i]]});
  for (std::size_t p = 0; p < patterns.size(); ++p) {
    Word rhs{E2[p]};
    for (std::uint32_t j = 1; j <= n; ++j) {
      if (patterns[p][j - 1] == 'Z') rhs.push_back(Qc(j));
    }
    add(ch1, E1[p], std::move(rhs));
    add(ch1, E2[p], {E3[p]});
    add(ch1, E3[p], {Qsel});
  }
  add(ch1, F, {Fppp});
  add(ch1, Fppp, {Fppp});

  // Clock, four-step cycle.
  const std::size_t ch2 = components - 1;
  add(ch2, S, {M0});
  add(ch2, M0, {M1});
  add(ch2, M1, {M2});
  add(ch2, M2, {M3});
  add(ch2, M3, {M0});

  for (Component& c : sys.components) canonicalize(c);
  return sys;
}

SizeReport size_report(const PCGSystem& system) {
  SizeReport rep;
  rep.components = system.components.size();
  std::unordered_set<SymbolId> nonterminals;
  std::unordered_set<SymbolId> queries;
  auto note = [&](SymbolId id) {
    if (system.symbols.is_query(id)) {
      queries.insert(id);
    } else if (system.symbols.is_nonterminal(id)) {
      nonterminals.insert(id);
    }
  };
  for (const Component& c : system.components) {
    for (SymbolId id : c.axiom) note(id);
    rep.rules += c.productions.size();
    for (const Production& p : c.productions) {
      note(p.lhs);
      for (SymbolId id : p.rhs) note(id);
    }
  }
  rep.nonterminals = nonterminals.size();
  rep.queries = queries.size();
  return rep;
}

Word build_universal_axiom(const SymbolTable& symbols, std::uint64_t code) {
  const std::optional<SymbolId> a = symbols.find("A");
  const std::optional<SymbolId> s = symbols.find("S");
  if (!a || !symbols.is_nonterminal(*a) || !s || !symbols.is_nonterminal(*s)) {
    throw std::invalid_argument("axiom requires interned nonterminals A and S");
  }
  Word w(static_cast<std::size_t>(code), *a);
  w.push_back(*s);
  return w;
}

std::uint32_t component_for_counter(std::uint32_t counter) { return 1 + counter; }

void set_code_axiom(PCGSystem& system, std::uint32_t counter, std::uint64_t code) {
  if (counter == 0) throw std::invalid_argument("counters are numbered from 1");
  const std::uint32_t comp = component_for_counter(counter);
  if (comp >= system.components.size()) {
    throw std::out_of_range("no component simulates counter " + std::to_string(counter));
  }
  system.components[comp].axiom = build_universal_axiom(system.symbols, code);
}

}  // namespace pcgs
