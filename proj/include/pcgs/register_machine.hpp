#ifndef PCGS_REGISTER_MACHINE_HPP
#define PCGS_REGISTER_MACHINE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pcgs/counter_machine.hpp"

namespace pcgs {

struct Instruction {
  enum class Kind : std::uint8_t { kAdd, kCheck, kCheckSub, kHalt };

  Kind kind = Kind::kHalt;
  std::uint32_t reg = 0;       // 1-based register index; unused for kHalt
  std::uint32_t target_a = 0;  // kAdd: next; kCheck: zero branch; kCheckSub: positive branch
  std::uint32_t target_b = 0;  // kCheck: positive branch; kCheckSub: zero branch

  bool operator==(const Instruction& o) const {
    return kind == o.kind && reg == o.reg && target_a == o.target_a && target_b == o.target_b;
  }
};

// Deterministic register machine; instructions[i] is the instruction labeled
// labels[i], so every label labels exactly one instruction by construction.
struct RegisterMachine {
  std::uint32_t registers = 1;
  std::vector<std::string> labels;
  std::uint32_t start = 0;
  std::uint32_t halt = 0;
  std::vector<Instruction> instructions;

  std::uint32_t label_id(const std::string& name) const;  // throws on unknown

  bool operator==(const RegisterMachine& o) const {
    return registers == o.registers && labels == o.labels && start == o.start && halt == o.halt &&
           instructions == o.instructions;
  }
};

std::vector<std::string> validate(const RegisterMachine& m);

// Runs the machine with `input` in register input_reg, everything else zero.
// Returns the value of output_reg on halt, or nullopt when the halt label is
// not reached within step_bound instructions.
std::optional<std::uint64_t> run_register(const RegisterMachine& m, std::uint64_t input, std::uint32_t input_reg,
                                          std::uint32_t output_reg, std::size_t step_bound);

// Register-to-counter translation: registers map to counters by index and
// every instruction expands over all 2^n guard combinations. The result has
// one state per label, a unary alphabet, only lambda reads, and uses the halt
// label as its final state until a front end replaces it.
CounterMachine translate_to_counter(const RegisterMachine& m, std::uint32_t input_reg, std::uint32_t output_reg);

struct FrontEndLayout {
  std::uint32_t code_counter = 2;
  std::uint32_t input_counter = 3;
  std::uint32_t output_counter = 1;
};

// Wraps a translated machine for use as a grammar generator: a fresh start
// state fills the input counter nondeterministically (the code counter must
// be nonzero for any fill rule to fire), the old halt state compares the
// output counter against the input word, and a fresh pre-final state drains
// every counter before the accepting state. Requires a unary alphabet.
CounterMachine attach_universal_front_end(const CounterMachine& m, const FrontEndLayout& layout = {});

}  // namespace pcgs

#endif
