#include "pcgs/register_machine.hpp"

#include <algorithm>
#include <stdexcept>

namespace pcgs {

std::uint32_t RegisterMachine::label_id(const std::string& name) const {
  for (std::uint32_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == name) return i;
  }
  throw std::out_of_range("unknown label: " + name);
}

std::vector<std::string> validate(const RegisterMachine& m) {
  std::vector<std::string> out;
  if (m.registers == 0) out.push_back("machine has no registers");
  if (m.labels.empty()) out.push_back("machine has no labels");
  if (m.labels.size() != m.instructions.size()) out.push_back("labels and instructions differ in count");
  if (m.start >= m.labels.size()) out.push_back("start label out of range");
  if (m.halt >= m.labels.size()) out.push_back("halt label out of range");
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    for (std::size_t j = i + 1; j < m.labels.size(); ++j) {
      if (m.labels[i] == m.labels[j]) out.push_back("duplicate label '" + m.labels[i] + "'");
    }
  }
  if (m.halt < m.instructions.size() && m.instructions[m.halt].kind != Instruction::Kind::kHalt) {
    out.push_back("halt label does not carry a halt instruction");
  }
  const std::size_t n = std::min(m.labels.size(), m.instructions.size());
  for (std::size_t i = 0; i < n; ++i) {
    const Instruction& ins = m.instructions[i];
    const std::string where = "instruction " + m.labels[i] + ": ";
    if (ins.kind == Instruction::Kind::kHalt) continue;
    if (ins.reg < 1 || ins.reg > m.registers) out.push_back(where + "register out of range");
    if (ins.target_a >= m.labels.size()) out.push_back(where + "jump target out of range");
    if (ins.kind != Instruction::Kind::kAdd && ins.target_b >= m.labels.size()) {
      out.push_back(where + "jump target out of range");
    }
  }
  return out;
}

std::optional<std::uint64_t> run_register(const RegisterMachine& m, std::uint64_t input, std::uint32_t input_reg,
                                          std::uint32_t output_reg, std::size_t step_bound) {
  if (input_reg < 1 || input_reg > m.registers || output_reg < 1 || output_reg > m.registers) {
    throw std::invalid_argument("register index out of range");
  }
  std::vector<std::uint64_t> regs(m.registers, 0);
  regs[input_reg - 1] = input;
  std::uint32_t pc = m.start;
  for (std::size_t step = 0; step <= step_bound; ++step) {
    const Instruction& ins = m.instructions[pc];
    switch (ins.kind) {
      case Instruction::Kind::kHalt:
        return regs[output_reg - 1];
      case Instruction::Kind::kAdd:
        ++regs[ins.reg - 1];
        pc = ins.target_a;
        break;
      case Instruction::Kind::kCheck:
        pc = regs[ins.reg - 1] == 0 ? ins.target_a : ins.target_b;
        break;
      case Instruction::Kind::kCheckSub:
        if (regs[ins.reg - 1] > 0) {
          --regs[ins.reg - 1];
          pc = ins.target_a;
        } else {
          pc = ins.target_b;
        }
        break;
    }
  }
  return std::nullopt;
}

CounterMachine translate_to_counter(const RegisterMachine& m, std::uint32_t input_reg, std::uint32_t output_reg) {
  if (input_reg < 1 || input_reg > m.registers || output_reg < 1 || output_reg > m.registers) {
    throw std::invalid_argument("register index out of range");
  }
  CounterMachine cm;
  cm.alphabet = {"a"};
  cm.states = m.labels;
  cm.start = m.start;
  cm.final_state = m.halt;
  cm.counters = m.registers;

  const std::uint32_t n = m.registers;
  const std::uint64_t combos = std::uint64_t{1} << n;
  for (std::uint32_t li = 0; li < m.instructions.size(); ++li) {
    const Instruction& ins = m.instructions[li];
    if (ins.kind == Instruction::Kind::kHalt) continue;
    for (std::uint64_t mask = 0; mask < combos; ++mask) {
      CounterRule r;
      r.from = li;
      r.read = kReadLambda;
      r.guards.resize(n);
      r.actions.assign(n, 0);
      for (std::uint32_t i = 0; i < n; ++i) {
        r.guards[i] = (mask >> i) & 1 ? Guard::kBlank : Guard::kZero;
      }
      const bool reg_blank = r.guards[ins.reg - 1] == Guard::kBlank;
      switch (ins.kind) {
        case Instruction::Kind::kAdd:
          r.to = ins.target_a;
          r.actions[ins.reg - 1] = 1;
          break;
        case Instruction::Kind::kCheck:
          r.to = reg_blank ? ins.target_b : ins.target_a;
          break;
        case Instruction::Kind::kCheckSub:
          if (reg_blank) {
            r.to = ins.target_a;
            r.actions[ins.reg - 1] = -1;
          } else {
            r.to = ins.target_b;
          }
          break;
        case Instruction::Kind::kHalt:
          break;
      }
      cm.rules.push_back(std::move(r));
    }
  }
  return cm;
}

namespace {

std::string fresh_state_name(const std::vector<std::string>& taken, std::string base) {
  while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
  return base;
}

}  // namespace

CounterMachine attach_universal_front_end(const CounterMachine& m, const FrontEndLayout& layout) {
  if (m.alphabet.size() != 1) throw std::invalid_argument("universal front end requires a unary alphabet");
  const std::uint32_t n = m.counters;
  const std::uint32_t code = layout.code_counter;
  const std::uint32_t input = layout.input_counter;
  const std::uint32_t output = layout.output_counter;
  if (code < 1 || code > n || input < 1 || input > n || output < 1 || output > n) {
    throw std::invalid_argument("front end counter out of range");
  }
  if (code == input || code == output || input == output) {
    throw std::invalid_argument("front end counters must be distinct");
  }

  CounterMachine out = m;
  const std::uint32_t fill_state = static_cast<std::uint32_t>(out.states.size());
  out.states.push_back(fresh_state_name(out.states, "q0"));
  const std::uint32_t erase_state = static_cast<std::uint32_t>(out.states.size());
  out.states.push_back(fresh_state_name(out.states, "e"));
  const std::uint32_t final_state = static_cast<std::uint32_t>(out.states.size());
  out.states.push_back(fresh_state_name(out.states, "qF"));

  // Nondeterministic input filling: with a nonzero code counter, pump the
  // input counter any number of times, then hand over to the old start state.
  auto fill_rule = [&](Guard input_guard, std::uint32_t to, std::int8_t input_action) {
    CounterRule r;
    r.from = fill_state;
    r.to = to;
    r.read = kReadLambda;
    r.guards.assign(n, Guard::kZero);
    r.guards[code - 1] = Guard::kBlank;
    r.guards[input - 1] = input_guard;
    r.actions.assign(n, 0);
    r.actions[input - 1] = input_action;
    return r;
  };
  out.rules.push_back(fill_rule(Guard::kZero, fill_state, 1));
  out.rules.push_back(fill_rule(Guard::kBlank, fill_state, 1));
  out.rules.push_back(fill_rule(Guard::kBlank, m.start, 0));

  // Comparison at the old final state: read one input symbol per unit of the
  // output counter, then move on empty to the erasure state.
  const std::uint64_t half = std::uint64_t{1} << (n - 1);
  auto spread_mask = [&](std::uint64_t mask, CounterRule& r) {
    // mask bits cover the counters other than `output`, ascending.
    std::uint32_t bit = 0;
    for (std::uint32_t i = 0; i < n; ++i) {
      if (i == output - 1) continue;
      r.guards[i] = (mask >> bit) & 1 ? Guard::kBlank : Guard::kZero;
      ++bit;
    }
  };
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    CounterRule r;
    r.from = m.final_state;
    r.to = m.final_state;
    r.read = 0;
    r.guards.assign(n, Guard::kZero);
    r.actions.assign(n, 0);
    r.guards[output - 1] = Guard::kBlank;
    r.actions[output - 1] = -1;
    spread_mask(mask, r);
    out.rules.push_back(std::move(r));
  }
  for (std::uint64_t mask = 0; mask < half; ++mask) {
    CounterRule r;
    r.from = m.final_state;
    r.to = erase_state;
    r.read = kReadLambda;
    r.guards.assign(n, Guard::kZero);
    r.actions.assign(n, 0);
    spread_mask(mask, r);
    out.rules.push_back(std::move(r));
  }

  // Erasure: decrement every nonempty counter per step; enter the fresh final
  // state only with all counters empty, leaving them unchanged.
  const std::uint64_t combos = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < combos; ++mask) {
    CounterRule r;
    r.from = erase_state;
    r.read = kReadLambda;
    r.guards.resize(n);
    r.actions.assign(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
      const bool blank = (mask >> i) & 1;
      r.guards[i] = blank ? Guard::kBlank : Guard::kZero;
      r.actions[i] = blank ? -1 : 0;
    }
    r.to = mask == 0 ? final_state : erase_state;
    out.rules.push_back(std::move(r));
  }

  out.start = fill_state;
  out.final_state = final_state;
  return out;
}

}  // namespace pcgs
