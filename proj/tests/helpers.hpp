#ifndef PCGS_TESTS_HELPERS_HPP
#define PCGS_TESTS_HELPERS_HPP

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcgs/construct.hpp"
#include "pcgs/counter_machine.hpp"
#include "pcgs/derivation.hpp"
#include "pcgs/grammar.hpp"
#include "pcgs/register_machine.hpp"
#include "pcgs/textio.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string fixture_path(const std::string& name) { return std::string(FIXTURES_DIR) + "/" + name; }

inline pcgs::SymbolId sym(const pcgs::SymbolTable& t, const std::string& name) {
  auto id = t.find(name);
  if (!id) throw std::runtime_error("unknown symbol " + name);
  return *id;
}

inline pcgs::Word word(const pcgs::SymbolTable& t, const std::vector<std::string>& names) {
  pcgs::Word w;
  w.reserve(names.size());
  for (const auto& n : names) w.push_back(sym(t, n));
  return w;
}

inline std::vector<std::string> word_names(const pcgs::SymbolTable& t, const std::vector<pcgs::Word>& words) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const auto& w : words) out.push_back(pcgs::format_word(t, w));
  return out;
}

// Declarative construction of small systems. Symbols are interned up front so
// production right-hand sides can reference queries by their Q<k> names.
struct SystemBuilder {
  pcgs::PCGSystem sys;

  SystemBuilder(std::uint32_t components, const std::vector<std::string>& nonterminals,
                const std::vector<std::string>& terminals) {
    for (const auto& n : nonterminals) sys.symbols.add_nonterminal(n);
    for (const auto& t : terminals) sys.symbols.add_terminal(t);
    sys.symbols.set_component_count(components);
    sys.components.resize(components);
  }

  SystemBuilder& axiom(std::size_t comp, const std::vector<std::string>& names) {
    sys.components[comp].axiom = word(sys.symbols, names);
    return *this;
  }

  SystemBuilder& prod(std::size_t comp, const std::string& lhs, const std::vector<std::string>& rhs) {
    pcgs::Production p;
    p.lhs = sym(sys.symbols, lhs);
    p.rhs = word(sys.symbols, rhs);
    sys.components[comp].productions.push_back(p);
    return *this;
  }

  pcgs::PCGSystem finish(pcgs::Mode mode = pcgs::Mode::kNonReturning, std::uint32_t master = 0) {
    sys.mode = mode;
    sys.master = master;
    for (auto& c : sys.components) pcgs::canonicalize(c);
    auto violations = pcgs::validate(sys);
    if (!violations.empty()) throw std::runtime_error("builder produced an invalid system: " + format(violations.front()));
    return sys;
  }
};

// Mirror of fixtures/anbn.cm: accepts a^n b^n for n >= 1.
inline pcgs::CounterMachine make_anbn() {
  using pcgs::Guard;
  pcgs::CounterMachine m;
  m.alphabet = {"a", "b"};
  m.states = {"q0", "q1", "qF"};
  m.start = 0;
  m.final_state = 2;
  m.counters = 2;
  m.rules = {
      {.from = 0, .to = 0, .read = 0, .guards = {Guard::kZero, Guard::kZero}, .actions = {+1, 0}},
      {.from = 0, .to = 0, .read = 0, .guards = {Guard::kBlank, Guard::kZero}, .actions = {+1, 0}},
      {.from = 0, .to = 1, .read = 1, .guards = {Guard::kBlank, Guard::kZero}, .actions = {-1, 0}},
      {.from = 1, .to = 1, .read = 1, .guards = {Guard::kBlank, Guard::kZero}, .actions = {-1, 0}},
      {.from = 1, .to = 2, .read = pcgs::kReadLambda, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
  };
  return m;
}

// Two transitions, both counters inert: a self-loop reading a and an exit to
// the final state. Accepts a^k for every k >= 0. Small enough that the sizes
// of its compiled system can be counted by hand.
inline pcgs::CounterMachine make_loop_machine() {
  using pcgs::Guard;
  pcgs::CounterMachine m;
  m.alphabet = {"a"};
  m.states = {"q0", "qF"};
  m.start = 0;
  m.final_state = 1;
  m.counters = 2;
  m.rules = {
      {.from = 0, .to = 0, .read = 0, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
      {.from = 0, .to = 1, .read = pcgs::kReadLambda, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
  };
  return m;
}

// Reads one input symbol per unit of counter 2 and accepts once both the
// input and the counter run out together. With counter 2 seeded to k through
// a code axiom the bounded language is exactly {a^k}.
inline pcgs::CounterMachine make_countdown_machine() {
  using pcgs::Guard;
  pcgs::CounterMachine m;
  m.alphabet = {"a"};
  m.states = {"q0", "qF"};
  m.start = 0;
  m.final_state = 1;
  m.counters = 2;
  m.rules = {
      {.from = 0, .to = 0, .read = 0, .guards = {Guard::kZero, Guard::kBlank}, .actions = {0, -1}},
      {.from = 0, .to = 1, .read = pcgs::kReadLambda, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
  };
  return m;
}

// Mirror of fixtures/doubler.rm: halts with register 2 holding twice the
// value register 1 started with.
inline pcgs::RegisterMachine make_doubler() {
  using Kind = pcgs::Instruction::Kind;
  pcgs::RegisterMachine m;
  m.registers = 2;
  m.labels = {"l0", "l1", "l2", "lh"};
  m.start = 0;
  m.halt = 3;
  m.instructions = {
      {.kind = Kind::kCheckSub, .reg = 1, .target_a = 1, .target_b = 3},
      {.kind = Kind::kAdd, .reg = 2, .target_a = 2, .target_b = 0},
      {.kind = Kind::kAdd, .reg = 2, .target_a = 0, .target_b = 0},
      {.kind = Kind::kHalt, .reg = 0, .target_a = 0, .target_b = 0},
  };
  return m;
}

inline std::vector<std::string> machine_word_names(const pcgs::CounterMachine& m, const pcgs::MachineWord& w) {
  std::vector<std::string> out;
  for (auto i : w) out.push_back(m.alphabet.at(i));
  return out;
}

// Drives a deterministic counter machine from the given counter values over
// the empty word. Returns the final-state configuration, or nullopt when the
// machine branches, gets stuck, or overruns the step cap.
inline std::optional<pcgs::MachineConfig> run_counter_machine(const pcgs::CounterMachine& m,
                                                              std::vector<std::uint64_t> counters,
                                                              std::size_t step_cap) {
  pcgs::MachineConfig c;
  c.state = m.start;
  c.input_pos = 0;
  c.counters = std::move(counters);
  for (std::size_t step = 0; step < step_cap; ++step) {
    if (c.state == m.final_state) return c;
    const auto succs = pcgs::machine_successors(m, {}, c);
    if (succs.size() != 1) return std::nullopt;
    c = succs[0];
  }
  if (c.state == m.final_state) return c;
  return std::nullopt;
}

}  // namespace testutil

#endif
