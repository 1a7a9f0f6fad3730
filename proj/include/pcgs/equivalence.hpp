#ifndef PCGS_EQUIVALENCE_HPP
#define PCGS_EQUIVALENCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pcgs/counter_machine.hpp"
#include "pcgs/derivation.hpp"
#include "pcgs/grammar.hpp"

namespace pcgs {

// Words as symbol-name sequences, the shared currency of both sides.
using NamedWord = std::vector<std::string>;

struct EquivalenceReport {
  std::vector<NamedWord> agreed;
  std::vector<NamedWord> only_in_grammar;
  std::vector<NamedWord> only_in_machine;
  bool conclusive = false;  // both enumerations were exhaustive / exact

  bool equal() const { return only_in_grammar.empty() && only_in_machine.empty(); }
};

// Default grammar-side bounds for a machine step budget: a simulated machine
// step costs at most seven grammar steps (four rewritings plus up to three
// communications), the closing sweep erases what the run collected, and the
// word-length cut caps the master. Generous depth is free when the search
// exhausts naturally.
EnumerationBounds default_grammar_bounds(std::size_t machine_steps, std::size_t max_len);

// Compares the bounded languages of a system and a counter machine over all
// words up to max_len. Throws std::invalid_argument when the terminal and
// input alphabets differ. The report is conclusive only when the grammar
// enumeration exhausted and the machine enumeration was exact.
EquivalenceReport check_equivalence(const PCGSystem& system, const CounterMachine& machine, std::size_t max_len,
                                    const EnumerationBounds& grammar_bounds, std::size_t machine_step_bound,
                                    unsigned workers = 1);

}  // namespace pcgs

#endif
