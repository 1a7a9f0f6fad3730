#include "pcgs/counter_machine.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace pcgs {

namespace {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint32_t CounterMachine::state_id(const std::string& name) const {
  for (std::uint32_t i = 0; i < states.size(); ++i) {
    if (states[i] == name) return i;
  }
  throw std::out_of_range("unknown state: " + name);
}

std::vector<std::string> validate(const CounterMachine& m) {
  std::vector<std::string> out;
  if (m.states.empty()) out.push_back("machine has no states");
  if (m.counters == 0) out.push_back("machine has no counters");
  if (m.start >= m.states.size()) out.push_back("start state out of range");
  if (m.final_state >= m.states.size()) out.push_back("final state out of range");
  for (std::size_t i = 0; i < m.states.size(); ++i) {
    for (std::size_t j = i + 1; j < m.states.size(); ++j) {
      if (m.states[i] == m.states[j]) out.push_back("duplicate state name '" + m.states[i] + "'");
    }
  }
  for (std::size_t i = 0; i < m.alphabet.size(); ++i) {
    for (std::size_t j = i + 1; j < m.alphabet.size(); ++j) {
      if (m.alphabet[i] == m.alphabet[j]) out.push_back("duplicate input symbol '" + m.alphabet[i] + "'");
    }
  }
  for (std::size_t ri = 0; ri < m.rules.size(); ++ri) {
    const CounterRule& r = m.rules[ri];
    const std::string where = "rule " + std::to_string(ri + 1) + ": ";
    if (r.from >= m.states.size()) out.push_back(where + "source state out of range");
    if (r.to >= m.states.size()) out.push_back(where + "target state out of range");
    if (r.read != kReadLambda && r.read != kReadBlank &&
        (r.read < 0 || static_cast<std::size_t>(r.read) >= m.alphabet.size())) {
      out.push_back(where + "read symbol out of range");
    }
    if (r.guards.size() != m.counters) out.push_back(where + "guard count does not match counters");
    if (r.actions.size() != m.counters) out.push_back(where + "action count does not match counters");
    const std::size_t n = std::min(r.guards.size(), r.actions.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (r.actions[i] < -1 || r.actions[i] > 1) {
        out.push_back(where + "action out of range on counter " + std::to_string(i + 1));
      }
      if (r.guards[i] == Guard::kZero && r.actions[i] == -1) {
        out.push_back(where + "decrement under zero guard on counter " + std::to_string(i + 1));
      }
    }
  }
  return out;
}

std::size_t MachineConfigHash::operator()(const MachineConfig& c) const {
  std::uint64_t h = mix64(c.state);
  h = mix64(h ^ c.input_pos);
  for (std::uint64_t v : c.counters) h = mix64(h ^ (v + 1));
  return static_cast<std::size_t>(h);
}

MachineConfig initial_machine_config(const CounterMachine& m) {
  MachineConfig c;
  c.state = m.start;
  c.input_pos = 0;
  c.counters.assign(m.counters, 0);
  return c;
}

std::vector<MachineConfig> machine_successors(const CounterMachine& m, const MachineWord& word,
                                              const MachineConfig& config) {
  std::vector<MachineConfig> out;
  for (const CounterRule& r : m.rules) {
    if (r.from != config.state) continue;
    std::uint32_t next_pos = config.input_pos;
    if (r.read == kReadBlank) {
      if (config.input_pos != word.size()) continue;
      next_pos = config.input_pos + 1;
    } else if (r.read != kReadLambda) {
      if (config.input_pos >= word.size() || word[config.input_pos] != static_cast<std::uint32_t>(r.read)) continue;
      next_pos = config.input_pos + 1;
    }
    bool applicable = true;
    for (std::size_t i = 0; i < m.counters; ++i) {
      const bool zero = config.counters[i] == 0;
      if ((r.guards[i] == Guard::kZero) != zero) {
        applicable = false;
        break;
      }
      if (zero && r.actions[i] < 0) {
        applicable = false;
        break;
      }
    }
    if (!applicable) continue;
    MachineConfig next;
    next.state = r.to;
    next.input_pos = next_pos;
    next.counters = config.counters;
    for (std::size_t i = 0; i < m.counters; ++i) {
      next.counters[i] = next.counters[i] + static_cast<std::int64_t>(r.actions[i]);
    }
    out.push_back(std::move(next));
  }
  return out;
}

AcceptOutcome accepts(const CounterMachine& m, const MachineWord& word, std::size_t step_bound) {
  std::unordered_set<MachineConfig, MachineConfigHash> visited;
  std::vector<MachineConfig> frontier{initial_machine_config(m)};
  visited.insert(frontier.front());

  auto accepting = [&](const MachineConfig& c) { return c.state == m.final_state && c.input_pos == word.size(); };

  if (accepting(frontier.front())) return AcceptOutcome::kAccepted;
  for (std::size_t step = 0; step < step_bound && !frontier.empty(); ++step) {
    std::vector<MachineConfig> next;
    for (const MachineConfig& c : frontier) {
      for (MachineConfig& s : machine_successors(m, word, c)) {
        if (!visited.insert(s).second) continue;
        if (accepting(s)) return AcceptOutcome::kAccepted;
        next.push_back(std::move(s));
      }
    }
    frontier = std::move(next);
  }
  return frontier.empty() ? AcceptOutcome::kRejected : AcceptOutcome::kBoundHit;
}

AcceptedSet enumerate_accepted(const CounterMachine& m, std::size_t max_len, std::size_t step_bound) {
  AcceptedSet out;
  out.exact = true;
  std::vector<MachineWord> layer{MachineWord{}};
  for (std::size_t len = 0; len <= max_len; ++len) {
    for (const MachineWord& w : layer) {
      switch (accepts(m, w, step_bound)) {
        case AcceptOutcome::kAccepted:
          out.words.push_back(w);
          break;
        case AcceptOutcome::kBoundHit:
          out.exact = false;
          break;
        case AcceptOutcome::kRejected:
          break;
      }
    }
    if (len == max_len) break;
    std::vector<MachineWord> next;
    next.reserve(layer.size() * m.alphabet.size());
    for (const MachineWord& w : layer) {
      for (std::uint32_t a = 0; a < m.alphabet.size(); ++a) {
        MachineWord e = w;
        e.push_back(a);
        next.push_back(std::move(e));
      }
    }
    layer = std::move(next);
  }
  return out;
}

}  // namespace pcgs
