#ifndef PCGS_COUNTER_MACHINE_HPP
#define PCGS_COUNTER_MACHINE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace pcgs {

// Counter guard: kZero tests a counter for zero, kBlank for nonzero.
enum class Guard : std::uint8_t { kZero, kBlank };

inline constexpr std::int32_t kReadLambda = -1;  // no input consumed
inline constexpr std::int32_t kReadBlank = -2;   // the first cell past the input

struct CounterRule {
  std::uint32_t from = 0;
  std::uint32_t to = 0;
  std::int32_t read = kReadLambda;  // kReadLambda, kReadBlank or alphabet index
  std::vector<Guard> guards;        // one per counter
  std::vector<std::int8_t> actions;  // -1, 0, +1; never -1 under a kZero guard

  bool operator==(const CounterRule& o) const {
    return from == o.from && to == o.to && read == o.read && guards == o.guards && actions == o.actions;
  }
};

// Nondeterministic machine over a one-way input tape and `counters` counters.
// A word is accepted when some run ends in the final state having consumed
// the input exactly.
struct CounterMachine {
  std::vector<std::string> alphabet;
  std::vector<std::string> states;
  std::uint32_t start = 0;
  std::uint32_t final_state = 0;
  std::uint32_t counters = 1;
  std::vector<CounterRule> rules;

  std::uint32_t state_id(const std::string& name) const;  // throws on unknown

  bool operator==(const CounterMachine& o) const {
    return alphabet == o.alphabet && states == o.states && start == o.start && final_state == o.final_state &&
           counters == o.counters && rules == o.rules;
  }
};

std::vector<std::string> validate(const CounterMachine& m);

struct MachineConfig {
  std::uint32_t state = 0;
  std::uint32_t input_pos = 0;
  std::vector<std::uint64_t> counters;

  bool operator==(const MachineConfig& o) const {
    return state == o.state && input_pos == o.input_pos && counters == o.counters;
  }
};

struct MachineConfigHash {
  std::size_t operator()(const MachineConfig& c) const;
};

using MachineWord = std::vector<std::uint32_t>;  // alphabet indices

MachineConfig initial_machine_config(const CounterMachine& m);

// All configurations reachable in one step. Guards are evaluated before
// actions; a blank read is only available on the first cell past the input.
std::vector<MachineConfig> machine_successors(const CounterMachine& m, const MachineWord& word,
                                              const MachineConfig& config);

enum class AcceptOutcome : std::uint8_t { kAccepted, kRejected, kBoundHit };

// Breadth-first search over reachable configurations, deduplicated.
// kRejected is only reported when the reachable set was exhausted within the
// bound; kBoundHit means the search was cut short undecided.
AcceptOutcome accepts(const CounterMachine& m, const MachineWord& word, std::size_t step_bound);

struct AcceptedSet {
  std::vector<MachineWord> words;  // sorted by length, then by indices
  bool exact = false;              // no per-word search hit the step bound
};

AcceptedSet enumerate_accepted(const CounterMachine& m, std::size_t max_len, std::size_t step_bound);

}  // namespace pcgs

#endif
