#ifndef PCGS_CONSTRUCT_HPP
#define PCGS_CONSTRUCT_HPP

#include <cstdint>
#include <string>

#include "pcgs/counter_machine.hpp"
#include "pcgs/grammar.hpp"

namespace pcgs {

// Word of A's a counter component emits when it applies a transition:
// one A per unit kept plus the increment. The pair (-1, kZero) has no image;
// asking for it throws std::domain_error.
std::string sigma(int action, Guard store);

// True when every rule entering the final state tests all counters for zero
// and leaves them unchanged. Both compilers require this shape.
bool validate_final_normal_form(const CounterMachine& m);

// Read-only view of one machine rule through the accessors the compiled
// grammars are organized around.
struct TransitionView {
  const CounterMachine* machine = nullptr;
  std::size_t rule = 0;

  std::uint32_t state() const { return machine->rules[rule].from; }
  std::uint32_t next_state() const { return machine->rules[rule].to; }
  std::int32_t read() const { return machine->rules[rule].read; }
  Guard store(std::uint32_t counter) const { return machine->rules[rule].guards[counter - 1]; }
  int action(std::uint32_t counter) const { return machine->rules[rule].actions[counter - 1]; }
};

// Six-component non-returning system simulating a two-counter machine. The
// rule families follow the source construction verbatim: a selector walks
// t -> D1[t] -> D2[t] -> t' and the other components check their guesses
// against it through queries; the master (component 2) emits one input
// symbol per simulated step and erases the collected bookkeeping at the end.
// Requires exactly two counters, final normal form, and no blank reads.
PCGSystem compile_theorem1(const CounterMachine& m);

// Generalization to any counter count with rule families kept linear in the
// transition count: the selector resolves the next transition through a
// per-state symbol, the checker keys on guard patterns instead of
// transitions, and phases run on a four-stage rhythm. Components are
// [selector, master, one per counter, checker, clock].
PCGSystem compile_universal(const CounterMachine& m);

struct SizeReport {
  std::size_t components = 0;
  std::size_t rules = 0;
  std::size_t nonterminals = 0;  // distinct nonterminals occurring in axioms or rules
  std::size_t queries = 0;
};

// Exact counts by direct traversal of the system.
SizeReport size_report(const PCGSystem& system);

// The axiom word A^code S. Requires A and S to be interned nonterminals.
Word build_universal_axiom(const SymbolTable& symbols, std::uint64_t code);

// 0-based index of the component simulating the given 1-based counter in a
// compiled system.
std::uint32_t component_for_counter(std::uint32_t counter);

// Overrides the axiom of the component simulating `counter` with A^code S.
void set_code_axiom(PCGSystem& system, std::uint32_t counter, std::uint64_t code);

}  // namespace pcgs

#endif
