#include "pcgs/equivalence.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace pcgs {

namespace {

// Words ordered by length first, then lexicographically by symbol names.
struct WordOrder {
  bool operator()(const NamedWord& a, const NamedWord& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }
};

}  // namespace

EnumerationBounds default_grammar_bounds(std::size_t machine_steps, std::size_t max_len) {
  EnumerationBounds bounds;
  bounds.max_depth = 8 * machine_steps + 6 * max_len + 48;
  bounds.max_configurations = 10'000'000;
  bounds.max_string_length = kUnbounded;
  bounds.max_master_terminals = max_len;
  return bounds;
}

EquivalenceReport check_equivalence(const PCGSystem& system, const CounterMachine& machine, std::size_t max_len,
                                    const EnumerationBounds& grammar_bounds, std::size_t machine_step_bound,
                                    unsigned workers) {
  std::set<std::string> grammar_alphabet;
  for (SymbolId id = 0; id < system.symbols.size(); ++id) {
    if (system.symbols.is_terminal(id)) grammar_alphabet.insert(system.symbols.name(id));
  }
  const std::set<std::string> machine_alphabet(machine.alphabet.begin(), machine.alphabet.end());
  if (grammar_alphabet != machine_alphabet) {
    throw std::invalid_argument("terminal alphabet differs from the machine input alphabet");
  }

  const EnumerationResult grammar_side = enumerate_language(system, grammar_bounds, workers);
  const AcceptedSet machine_side = enumerate_accepted(machine, max_len, machine_step_bound);

  std::set<NamedWord, WordOrder> grammar_words;
  for (const Word& w : grammar_side.words) {
    if (w.size() > max_len) continue;
    NamedWord named;
    named.reserve(w.size());
    for (SymbolId id : w) named.push_back(system.symbols.name(id));
    grammar_words.insert(std::move(named));
  }
  std::set<NamedWord, WordOrder> machine_words;
  for (const MachineWord& w : machine_side.words) {
    NamedWord named;
    named.reserve(w.size());
    for (std::uint32_t index : w) named.push_back(machine.alphabet[index]);
    machine_words.insert(std::move(named));
  }

  EquivalenceReport report;
  for (const NamedWord& w : grammar_words) {
    if (machine_words.count(w) != 0) {
      report.agreed.push_back(w);
    } else {
      report.only_in_grammar.push_back(w);
    }
  }
  for (const NamedWord& w : machine_words) {
    if (grammar_words.count(w) == 0) report.only_in_machine.push_back(w);
  }
  report.conclusive = grammar_side.exhausted && machine_side.exact;
  return report;
}

}  // namespace pcgs
