#ifndef PCGS_DERIVATION_HPP
#define PCGS_DERIVATION_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "pcgs/grammar.hpp"

namespace pcgs {

enum class StepKind : std::uint8_t { kRewriting, kCommunication, kFinal, kBlocked };

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct EnumerationBounds {
  std::size_t max_depth = 64;
  std::size_t max_configurations = 1'000'000;
  std::size_t max_string_length = kUnbounded;
  // Configurations whose master string holds more terminal occurrences than
  // this are cut. In non-returning mode terminals never leave the master, so
  // the cut is exact for words up to the bound and does not cost exhaustion;
  // in returning mode it is a plain budget like the others.
  std::size_t max_master_terminals = kUnbounded;
};

struct EnumerationStats {
  std::size_t visited = 0;
  std::size_t blocked = 0;
  std::size_t pruned_length = 0;
  std::size_t pruned_master = 0;
  // Configurations cut by the dead-branch test (non-returning mode only):
  // even granting every component its most favourable moves, no descendant
  // of the configuration can make the master string terminal-only.
  std::size_t pruned_dead = 0;
};

struct EnumerationResult {
  std::vector<Word> words;  // sorted by length, then by symbol names
  bool exhausted = false;
  EnumerationStats stats;
};

struct DerivationOptions {
  // Restricts rewriting to each string's leftmost rewritable nonterminal.
  // This is a speed heuristic only: it drops derivations and with them words,
  // so every completeness-sensitive caller leaves it off.
  bool leftmost_only = false;
};

// Never returns kBlocked; blocked outcomes surface from the step functions.
// Throws std::invalid_argument when the configuration shape does not match
// the system.
StepKind classify(const PCGSystem& system, const Configuration& config);

// Case 2 of the step relation. Every query occurrence whose queried strings
// are all query-free is replaced simultaneously; in returning mode each
// component that delivered its string restarts from its axiom. Returns
// nullopt when the step is blocked, i.e. the result equals the input.
// Requires classify(config) == kCommunication.
std::optional<Configuration> communication_step(const PCGSystem& system, const Configuration& config);

// Case 1 of the step relation: every string holding a nonterminal does one
// context-free step, terminal-only strings pass through. Returns the
// deduplicated Cartesian product over the per-component choices in canonical
// order, or nullopt when some component holds a nonterminal but admits no
// production. Requires classify(config) == kRewriting.
std::optional<std::vector<Configuration>> rewriting_successors(const PCGSystem& system, const Configuration& config,
                                                               const DerivationOptions& options = {});

// Breadth-first enumeration of the generated language. The master string is
// collected at every visited configuration once it is terminal-only, whether
// or not the other components can still move. `workers` splits successor
// expansion per depth layer; results are identical for any worker count.
//
// The search applies two word-preserving reductions that the step functions
// themselves never apply. A component that no production or axiom can query
// performs only the leftmost erasure whenever every rewrite open to it
// erases a nonterminal: the orders commute into the same string at the same
// depth and none of the intermediates is a word, so only the bookkeeping
// orders disappear. And in non-returning mode a configuration is dropped
// when an optimistic reachability test proves the master string can never
// again become terminal-only: the test closes each component's symbol set
// under its own productions and all query deliveries, and a master symbol
// outside that closure is permanent. `exhausted` means this reduced space
// was fully explored, which makes the word list complete within the bounds.
EnumerationResult enumerate_language(const PCGSystem& system, const EnumerationBounds& bounds, unsigned workers = 1,
                                     const DerivationOptions& options = {});

// Deterministic replay: choices[i] indexes the canonical successor list of
// step i (communication steps have exactly one successor, index 0). Returns
// all visited configurations, starting with the initial one. Throws
// std::out_of_range("no such successor") and std::runtime_error("blocked
// step") on bad traces.
std::vector<Configuration> replay_trace(const PCGSystem& system, const std::vector<std::size_t>& choices);

}  // namespace pcgs

#endif
