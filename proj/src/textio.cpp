#include "pcgs/textio.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace pcgs {

namespace {

struct TokenLine {
  int number = 0;
  std::vector<std::string> tokens;
};

bool machine_punct(char c) { return c == '(' || c == ')' || c == ',' || c == ':'; }

// Lines of whitespace-separated tokens; '#' starts a comment. In machine
// mode the punctuation characters ( ) , : become standalone tokens.
std::vector<TokenLine> tokenize(std::string_view text, bool machine_mode) {
  std::vector<TokenLine> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    TokenLine tl;
    tl.number = number;
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) tl.tokens.push_back(std::move(cur));
      cur.clear();
    };
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else if (machine_mode && machine_punct(c)) {
        flush();
        tl.tokens.emplace_back(1, c);
      } else {
        cur.push_back(c);
      }
    }
    flush();
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

std::uint64_t parse_number(const TokenLine& line, const std::string& token, const char* what) {
  std::uint64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(line.number, std::string("expected ") + what + ", got '" + token + "'");
  }
  return value;
}

// Cursor over token lines with required-line accessors.
struct LineCursor {
  const std::vector<TokenLine>& lines;
  std::size_t index = 0;

  bool done() const { return index >= lines.size(); }
  const TokenLine& peek() const { return lines[index]; }
  int last_number() const { return lines.empty() ? 1 : lines.back().number; }

  const TokenLine& expect(const char* what) {
    if (done()) throw ParseError(last_number(), std::string("expected ") + what + " before end of file");
    return lines[index++];
  }
};

// Keyword line `<keyword> : tok tok ...` in machine mode.
std::vector<std::string> keyword_line(LineCursor& cur, const std::string& keyword) {
  const TokenLine& tl = cur.expect(("'" + keyword + ":' line").c_str());
  if (tl.tokens.size() < 2 || tl.tokens[0] != keyword || tl.tokens[1] != ":") {
    throw ParseError(tl.number, "expected '" + keyword + ":' line");
  }
  return std::vector<std::string>(tl.tokens.begin() + 2, tl.tokens.end());
}

std::string single_name(const TokenLine& tl, const std::vector<std::string>& rest, const std::string& keyword) {
  if (rest.size() != 1) throw ParseError(tl.number, "'" + keyword + ":' takes exactly one name");
  return rest[0];
}

std::uint32_t find_name(const std::vector<std::string>& names, const std::string& name, const TokenLine& tl,
                        const char* what) {
  for (std::uint32_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return i;
  }
  throw ParseError(tl.number, std::string("unknown ") + what + " '" + name + "'");
}

void check_name(const TokenLine& tl, const std::string& name, const char* what) {
  if (!valid_symbol_name(name)) {
    throw ParseError(tl.number, std::string("invalid ") + what + " name '" + name + "'");
  }
}

// Structural reader for `( a , b , ... ) -> ( c , ... )` rule lines.
struct RuleReader {
  const TokenLine& line;
  std::size_t pos = 0;

  bool at(const char* tok) const { return pos < line.tokens.size() && line.tokens[pos] == tok; }

  const std::string& take(const char* what) {
    if (pos >= line.tokens.size()) {
      throw ParseError(line.number, std::string("expected ") + what + " at end of rule");
    }
    return line.tokens[pos++];
  }

  void punct(const char* tok) {
    const std::string& got = take(tok);
    if (got != tok) {
      throw ParseError(line.number, std::string("expected '") + tok + "', got '" + got + "'");
    }
  }

  void finish() {
    if (pos != line.tokens.size()) {
      throw ParseError(line.number, "trailing tokens after rule: '" + line.tokens[pos] + "'");
    }
  }
};

std::int8_t parse_action(const TokenLine& line, const std::string& token) {
  if (token == "+1" || token == "1") return 1;
  if (token == "0") return 0;
  if (token == "-1") return -1;
  throw ParseError(line.number, "counter action must be -1, 0, or +1, got '" + token + "'");
}

CounterMachine parse_counter_machine(LineCursor& cur, std::uint32_t counters) {
  CounterMachine m;
  m.counters = counters;

  {
    const TokenLine& tl = cur.peek();
    std::vector<std::string> alpha = keyword_line(cur, "alphabet");
    for (const std::string& a : alpha) {
      check_name(tl, a, "input symbol");
      if (a == "B" || a == "eps") throw ParseError(tl.number, "input symbol name '" + a + "' is reserved");
      for (const std::string& seen : m.alphabet) {
        if (seen == a) throw ParseError(tl.number, "duplicate input symbol '" + a + "'");
      }
      m.alphabet.push_back(a);
    }
  }
  {
    const TokenLine& tl = cur.peek();
    std::vector<std::string> states = keyword_line(cur, "states");
    if (states.empty()) throw ParseError(tl.number, "machine needs at least one state");
    for (const std::string& q : states) {
      check_name(tl, q, "state");
      for (const std::string& seen : m.states) {
        if (seen == q) throw ParseError(tl.number, "duplicate state '" + q + "'");
      }
      m.states.push_back(q);
    }
  }
  {
    const TokenLine& tl = cur.peek();
    m.start = find_name(m.states, single_name(tl, keyword_line(cur, "start"), "start"), tl, "state");
  }
  {
    const TokenLine& tl = cur.peek();
    m.final_state = find_name(m.states, single_name(tl, keyword_line(cur, "final"), "final"), tl, "state");
  }

  while (!cur.done()) {
    const TokenLine& tl = cur.expect("rule");
    RuleReader r{tl};
    CounterRule rule;
    r.punct("(");
    rule.from = find_name(m.states, r.take("state"), tl, "state");
    r.punct(",");
    const std::string& read = r.take("input symbol");
    if (read == "eps") {
      rule.read = kReadLambda;
    } else if (read == "B") {
      rule.read = kReadBlank;
    } else {
      bool found = false;
      for (std::uint32_t i = 0; i < m.alphabet.size(); ++i) {
        if (m.alphabet[i] == read) {
          rule.read = static_cast<std::int32_t>(i);
          found = true;
          break;
        }
      }
      if (!found) throw ParseError(tl.number, "unknown input symbol '" + read + "'");
    }
    for (std::uint32_t i = 0; i < counters; ++i) {
      r.punct(",");
      const std::string& g = r.take("guard");
      if (g == "Z") {
        rule.guards.push_back(Guard::kZero);
      } else if (g == "B") {
        rule.guards.push_back(Guard::kBlank);
      } else {
        throw ParseError(tl.number, "guard must be Z or B, got '" + g + "'");
      }
    }
    r.punct(")");
    r.punct("->");
    r.punct("(");
    rule.to = find_name(m.states, r.take("state"), tl, "state");
    for (std::uint32_t i = 0; i < counters; ++i) {
      r.punct(",");
      rule.actions.push_back(parse_action(tl, r.take("action")));
    }
    r.punct(")");
    r.finish();
    for (std::uint32_t i = 0; i < counters; ++i) {
      if (rule.guards[i] == Guard::kZero && rule.actions[i] < 0) {
        throw ParseError(tl.number, "decrement under a zero guard");
      }
    }
    m.rules.push_back(std::move(rule));
  }
  return m;
}

RegisterMachine parse_register_machine(LineCursor& cur, std::uint32_t registers) {
  RegisterMachine m;
  m.registers = registers;

  int labels_line = 1;
  {
    const TokenLine& tl = cur.peek();
    labels_line = tl.number;
    std::vector<std::string> labels = keyword_line(cur, "labels");
    if (labels.empty()) throw ParseError(tl.number, "machine needs at least one label");
    for (const std::string& l : labels) {
      check_name(tl, l, "label");
      for (const std::string& seen : m.labels) {
        if (seen == l) throw ParseError(tl.number, "duplicate label '" + l + "'");
      }
      m.labels.push_back(l);
    }
  }
  {
    const TokenLine& tl = cur.peek();
    m.start = find_name(m.labels, single_name(tl, keyword_line(cur, "start"), "start"), tl, "label");
  }
  {
    const TokenLine& tl = cur.peek();
    m.halt = find_name(m.labels, single_name(tl, keyword_line(cur, "halt"), "halt"), tl, "label");
  }

  m.instructions.resize(m.labels.size());
  std::vector<bool> seen(m.labels.size(), false);

  auto parse_register_token = [&](const TokenLine& tl, const std::string& token) {
    if (token.size() < 2 || token[0] != 'r') {
      throw ParseError(tl.number, "expected register r1..r" + std::to_string(registers) + ", got '" + token + "'");
    }
    const std::uint64_t r = parse_number(tl, token.substr(1), "register number");
    if (r < 1 || r > registers) throw ParseError(tl.number, "register out of range: '" + token + "'");
    return static_cast<std::uint32_t>(r);
  };

  while (!cur.done()) {
    const TokenLine& tl = cur.expect("instruction");
    RuleReader r{tl};
    const std::uint32_t label = find_name(m.labels, r.take("label"), tl, "label");
    r.punct(":");
    if (seen[label]) throw ParseError(tl.number, "label '" + m.labels[label] + "' already has an instruction");
    seen[label] = true;
    Instruction& ins = m.instructions[label];
    const std::string& op = r.take("instruction");
    if (op == "HALT") {
      ins.kind = Instruction::Kind::kHalt;
    } else if (op == "ADD") {
      ins.kind = Instruction::Kind::kAdd;
      ins.reg = parse_register_token(tl, r.take("register"));
      r.punct("->");
      ins.target_a = find_name(m.labels, r.take("label"), tl, "label");
    } else if (op == "CHECK" || op == "CHECKSUB") {
      // CHECK lists the zero target first, CHECKSUB the positive target.
      ins.kind = op == "CHECK" ? Instruction::Kind::kCheck : Instruction::Kind::kCheckSub;
      ins.reg = parse_register_token(tl, r.take("register"));
      r.punct("->");
      ins.target_a = find_name(m.labels, r.take("label"), tl, "label");
      r.punct(",");
      ins.target_b = find_name(m.labels, r.take("label"), tl, "label");
    } else {
      throw ParseError(tl.number, "unknown instruction '" + op + "'");
    }
    r.finish();
  }

  for (std::size_t i = 0; i < seen.size(); ++i) {
    if (!seen[i]) throw ParseError(labels_line, "label '" + m.labels[i] + "' has no instruction");
  }
  return m;
}

}  // namespace

ParsedMachine parse_machine_file(std::string_view text) {
  const std::vector<TokenLine> lines = tokenize(text, true);
  LineCursor cur{lines};
  const TokenLine& head = cur.expect("'counters <n>' or 'registers <m>' header");
  if (head.tokens.size() != 2 || (head.tokens[0] != "counters" && head.tokens[0] != "registers")) {
    throw ParseError(head.number, "expected 'counters <n>' or 'registers <m>' header");
  }
  const std::uint64_t n = parse_number(head, head.tokens[1], "a count");
  if (n == 0 || n > 64) throw ParseError(head.number, "count must be between 1 and 64");
  if (head.tokens[0] == "counters") {
    return parse_counter_machine(cur, static_cast<std::uint32_t>(n));
  }
  return parse_register_machine(cur, static_cast<std::uint32_t>(n));
}

std::string emit_counter_machine_file(const CounterMachine& m) {
  std::ostringstream out;
  out << "counters " << m.counters << "\n";
  out << "alphabet:";
  for (const std::string& a : m.alphabet) out << ' ' << a;
  out << "\nstates:";
  for (const std::string& q : m.states) out << ' ' << q;
  out << "\nstart: " << m.states[m.start] << "\n";
  out << "final: " << m.states[m.final_state] << "\n";
  for (const CounterRule& r : m.rules) {
    out << '(' << m.states[r.from] << ", ";
    if (r.read == kReadLambda) {
      out << "eps";
    } else if (r.read == kReadBlank) {
      out << 'B';
    } else {
      out << m.alphabet[static_cast<std::size_t>(r.read)];
    }
    for (Guard g : r.guards) out << ", " << (g == Guard::kZero ? 'Z' : 'B');
    out << ") -> (" << m.states[r.to];
    for (std::int8_t a : r.actions) out << ", " << (a > 0 ? "+1" : a < 0 ? "-1" : "0");
    out << ")\n";
  }
  return out.str();
}

std::string emit_register_machine_file(const RegisterMachine& m) {
  std::ostringstream out;
  out << "registers " << m.registers << "\n";
  out << "labels:";
  for (const std::string& l : m.labels) out << ' ' << l;
  out << "\nstart: " << m.labels[m.start] << "\n";
  out << "halt: " << m.labels[m.halt] << "\n";
  for (std::size_t i = 0; i < m.instructions.size(); ++i) {
    const Instruction& ins = m.instructions[i];
    out << m.labels[i] << ": ";
    switch (ins.kind) {
      case Instruction::Kind::kHalt:
        out << "HALT";
        break;
      case Instruction::Kind::kAdd:
        out << "ADD r" << ins.reg << " -> " << m.labels[ins.target_a];
        break;
      case Instruction::Kind::kCheck:
        out << "CHECK r" << ins.reg << " -> " << m.labels[ins.target_a] << ", " << m.labels[ins.target_b];
        break;
      case Instruction::Kind::kCheckSub:
        out << "CHECKSUB r" << ins.reg << " -> " << m.labels[ins.target_a] << ", " << m.labels[ins.target_b];
        break;
    }
    out << "\n";
  }
  return out.str();
}

PCGSystem parse_grammar_file(std::string_view text) {
  const std::vector<TokenLine> lines = tokenize(text, false);
  LineCursor cur{lines};

  const TokenLine& head = cur.expect("'pcgs' header");
  if (head.tokens.size() != 3 || head.tokens[0] != "pcgs") {
    throw ParseError(head.number, "expected header 'pcgs <returning|nonreturning> master=<i>'");
  }
  PCGSystem sys;
  if (head.tokens[1] == "returning") {
    sys.mode = Mode::kReturning;
  } else if (head.tokens[1] == "nonreturning") {
    sys.mode = Mode::kNonReturning;
  } else {
    throw ParseError(head.number, "mode must be 'returning' or 'nonreturning'");
  }
  const std::string& mt = head.tokens[2];
  if (mt.rfind("master=", 0) != 0) throw ParseError(head.number, "expected 'master=<i>'");
  const std::uint64_t master = parse_number(head, mt.substr(7), "master index");

  std::size_t component_count = 0;
  for (const TokenLine& tl : lines) {
    if (tl.tokens[0] == "component") ++component_count;
  }
  if (component_count == 0) throw ParseError(cur.last_number(), "grammar has no components");
  if (master < 1 || master > component_count) throw ParseError(head.number, "master index out of range");
  sys.master = static_cast<std::uint32_t>(master - 1);

  auto declare = [&](const char* keyword, bool terminal) {
    const TokenLine& tl = cur.expect((std::string("'") + keyword + "' line").c_str());
    if (tl.tokens[0] != keyword) throw ParseError(tl.number, std::string("expected '") + keyword + "' line");
    for (std::size_t i = 1; i < tl.tokens.size(); ++i) {
      const std::string& name = tl.tokens[i];
      if (!valid_symbol_name(name)) throw ParseError(tl.number, "invalid symbol name '" + name + "'");
      if (reserved_query_name(name)) {
        throw ParseError(tl.number, "name '" + name + "' is reserved for query symbols");
      }
      if (sys.symbols.find(name).has_value()) throw ParseError(tl.number, "duplicate symbol name '" + name + "'");
      if (terminal) {
        sys.symbols.add_terminal(name);
      } else {
        sys.symbols.add_nonterminal(name);
      }
    }
  };
  declare("nonterminals:", false);
  declare("terminals:", true);
  sys.symbols.set_component_count(static_cast<std::uint32_t>(component_count));

  auto resolve = [&](const TokenLine& tl, const std::string& token) -> SymbolId {
    if (reserved_query_name(token)) {
      const std::uint64_t q = parse_number(tl, token.substr(1), "query index");
      if (q < 1 || q > component_count) throw ParseError(tl.number, "undefined query symbol '" + token + "'");
      return sys.symbols.query_symbol(static_cast<std::uint32_t>(q - 1));
    }
    const std::optional<SymbolId> id = sys.symbols.find(token);
    if (!id) throw ParseError(tl.number, "undeclared symbol '" + token + "'");
    return *id;
  };

  for (std::size_t comp = 1; comp <= component_count; ++comp) {
    const std::string header = "component " + std::to_string(comp) + ":";
    const TokenLine& ch = cur.expect(("'" + header + "'").c_str());
    if (ch.tokens.size() != 2 || ch.tokens[0] != "component" || ch.tokens[1] != std::to_string(comp) + ":") {
      throw ParseError(ch.number, "expected '" + header + "'");
    }
    Component component;
    const TokenLine& ax = cur.expect("'axiom:' line");
    if (ax.tokens[0] != "axiom:" || ax.tokens.size() < 2) throw ParseError(ax.number, "expected 'axiom: <word>'");
    if (ax.tokens.size() == 2 && ax.tokens[1] == "<eps>") throw ParseError(ax.number, "axiom must not be empty");
    for (std::size_t i = 1; i < ax.tokens.size(); ++i) {
      component.axiom.push_back(resolve(ax, ax.tokens[i]));
    }
    while (!cur.done() && cur.peek().tokens[0] != "component") {
      const TokenLine& tl = cur.expect("production");
      if (tl.tokens.size() < 2 || tl.tokens[1] != "->") {
        throw ParseError(tl.number, "expected '<lhs> -> <rhs>'");
      }
      if (tl.tokens.size() == 2) {
        throw ParseError(tl.number, "empty right-hand side must be written '<eps>'");
      }
      Production p;
      p.lhs = resolve(tl, tl.tokens[0]);
      if (!sys.symbols.is_nonterminal(p.lhs)) {
        throw ParseError(tl.number, "left-hand side '" + tl.tokens[0] + "' is not a nonterminal");
      }
      if (!(tl.tokens.size() == 3 && tl.tokens[2] == "<eps>")) {
        for (std::size_t i = 2; i < tl.tokens.size(); ++i) {
          if (tl.tokens[i] == "<eps>") throw ParseError(tl.number, "'<eps>' must stand alone");
          p.rhs.push_back(resolve(tl, tl.tokens[i]));
        }
      }
      component.productions.push_back(std::move(p));
    }
    sys.components.push_back(std::move(component));
  }
  return sys;
}

std::string emit_grammar_file(const PCGSystem& system) {
  std::ostringstream out;
  out << "pcgs " << (system.mode == Mode::kReturning ? "returning" : "nonreturning") << " master="
      << system.master + 1 << "\n";
  out << "nonterminals:";
  for (SymbolId id = 0; id < system.symbols.size(); ++id) {
    if (system.symbols.is_nonterminal(id)) out << ' ' << system.symbols.name(id);
  }
  out << "\nterminals:";
  for (SymbolId id = 0; id < system.symbols.size(); ++id) {
    if (system.symbols.is_terminal(id)) out << ' ' << system.symbols.name(id);
  }
  out << "\n";
  for (std::size_t c = 0; c < system.components.size(); ++c) {
    const Component& component = system.components[c];
    out << "component " << c + 1 << ":\n";
    out << "axiom: " << format_word(system.symbols, component.axiom) << "\n";
    for (const Production& p : component.productions) {
      out << system.symbols.name(p.lhs) << " -> " << format_word(system.symbols, p.rhs) << "\n";
    }
  }
  return out.str();
}

std::string format_word(const SymbolTable& symbols, const Word& word) {
  if (word.empty()) return "<eps>";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0) out += ' ';
    out += symbols.name(word[i]);
  }
  return out;
}

std::string format_configuration(const SymbolTable& symbols, const Configuration& config) {
  std::string out = "(";
  for (std::size_t i = 0; i < config.strings.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_word(symbols, config.strings[i]);
  }
  out += ")";
  return out;
}

bool valid_symbol_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    const char c = name[i];
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'' || c == '[' || c == ']')) {
      return false;
    }
  }
  return true;
}

bool reserved_query_name(std::string_view name) {
  if (name.size() < 2 || name[0] != 'Q') return false;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
  }
  return true;
}

}  // namespace pcgs
