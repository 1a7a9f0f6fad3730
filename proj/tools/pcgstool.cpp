#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "pcgs/construct.hpp"
#include "pcgs/counter_machine.hpp"
#include "pcgs/derivation.hpp"
#include "pcgs/equivalence.hpp"
#include "pcgs/grammar.hpp"
#include "pcgs/register_machine.hpp"
#include "pcgs/textio.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kInconclusive = 3;
constexpr int kMismatch = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ValidationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw UsageError("cannot write '" + path + "'");
}

pcgs::PCGSystem load_grammar(const std::string& path) {
  pcgs::PCGSystem sys = pcgs::parse_grammar_file(read_file(path));
  const std::vector<pcgs::Violation> violations = pcgs::validate(sys);
  if (!violations.empty()) {
    std::string msg = path + ": " + pcgs::format(violations.front());
    if (violations.size() > 1) msg += " (and " + std::to_string(violations.size() - 1) + " more)";
    throw ValidationFailure(msg);
  }
  return sys;
}

pcgs::CounterMachine load_counter_machine(const std::string& path) {
  pcgs::ParsedMachine parsed = pcgs::parse_machine_file(read_file(path));
  pcgs::CounterMachine* m = std::get_if<pcgs::CounterMachine>(&parsed);
  if (m == nullptr) throw ValidationFailure(path + ": expected a counter machine file");
  const std::vector<std::string> problems = pcgs::validate(*m);
  if (!problems.empty()) throw ValidationFailure(path + ": " + problems.front());
  return std::move(*m);
}

pcgs::RegisterMachine load_register_machine(const std::string& path) {
  pcgs::ParsedMachine parsed = pcgs::parse_machine_file(read_file(path));
  pcgs::RegisterMachine* m = std::get_if<pcgs::RegisterMachine>(&parsed);
  if (m == nullptr) throw ValidationFailure(path + ": expected a register machine file");
  const std::vector<std::string> problems = pcgs::validate(*m);
  if (!problems.empty()) throw ValidationFailure(path + ": " + problems.front());
  return std::move(*m);
}

std::uint64_t parse_number(const std::string& text, const char* what) {
  std::uint64_t value = 0;
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), last, value);
  if (ec != std::errc() || ptr != last) {
    throw UsageError(std::string("expected ") + what + ", got '" + text + "'");
  }
  return value;
}

std::vector<std::string> split_on_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t comma = text.find(',', pos);
    out.push_back(text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::vector<std::size_t> parse_choices(const std::string& text) {
  std::vector<std::size_t> out;
  if (text.empty()) return out;
  for (const std::string& piece : split_on_commas(text)) {
    out.push_back(static_cast<std::size_t>(parse_number(piece, "a successor index")));
  }
  return out;
}

pcgs::MachineWord parse_input_word(const pcgs::CounterMachine& m, const std::string& text) {
  auto index_of = [&](const std::string& name) -> std::uint32_t {
    for (std::uint32_t i = 0; i < m.alphabet.size(); ++i) {
      if (m.alphabet[i] == name) return i;
    }
    throw UsageError("input symbol '" + name + "' is not in the alphabet");
  };
  pcgs::MachineWord word;
  if (text.empty() || text == "<eps>") return word;
  if (text.find(',') != std::string::npos) {
    for (const std::string& piece : split_on_commas(text)) word.push_back(index_of(piece));
  } else {
    for (char c : text) word.push_back(index_of(std::string(1, c)));
  }
  return word;
}

std::string machine_word_text(const pcgs::CounterMachine& m, const pcgs::MachineWord& w) {
  if (w.empty()) return "<eps>";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += m.alphabet[w[i]];
  }
  return out;
}

std::string named_word_text(const pcgs::NamedWord& w) {
  if (w.empty()) return "<eps>";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i > 0) out += ' ';
    out += w[i];
  }
  return out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

void print_size_report(const pcgs::SizeReport& rep) {
  std::cout << "components: " << rep.components << "\n";
  std::cout << "rules: " << rep.rules << "\n";
  std::cout << "nonterminals: " << rep.nonterminals << "\n";
  std::cout << "queries: " << rep.queries << "\n";
}

int cmd_pcgs_enum(const std::string& file, std::size_t max_len, std::size_t max_depth, std::size_t max_configs,
                  unsigned workers) {
  const pcgs::PCGSystem sys = load_grammar(file);
  pcgs::EnumerationBounds bounds;
  bounds.max_depth = max_depth;
  bounds.max_configurations = max_configs;
  bounds.max_master_terminals = max_len;
  const pcgs::EnumerationResult result = pcgs::enumerate_language(sys, bounds, workers);
  std::size_t count = 0;
  for (const pcgs::Word& w : result.words) {
    if (w.size() > max_len) continue;
    std::cout << "word: " << pcgs::format_word(sys.symbols, w) << "\n";
    ++count;
  }
  std::cout << "words: " << count << "\n";
  std::cout << "visited: " << result.stats.visited << "\n";
  std::cout << "blocked: " << result.stats.blocked << "\n";
  std::cout << "pruned-length: " << result.stats.pruned_length << "\n";
  std::cout << "pruned-master: " << result.stats.pruned_master << "\n";
  std::cout << "pruned-dead: " << result.stats.pruned_dead << "\n";
  std::cout << "exhausted: " << yes_no(result.exhausted) << "\n";
  return kOk;
}

int cmd_pcgs_trace(const std::string& file, const std::string& choices_text) {
  const pcgs::PCGSystem sys = load_grammar(file);
  const std::vector<std::size_t> choices = parse_choices(choices_text);
  const std::vector<pcgs::Configuration> trace = pcgs::replay_trace(sys, choices);
  for (std::size_t i = 0; i < trace.size(); ++i) {
    std::cout << i << ": " << pcgs::format_configuration(sys.symbols, trace[i]) << "\n";
  }
  return kOk;
}

int cmd_machine_run(const std::string& file, const std::string& word_text, std::size_t steps) {
  const pcgs::CounterMachine m = load_counter_machine(file);
  const pcgs::MachineWord word = parse_input_word(m, word_text);
  switch (pcgs::accepts(m, word, steps)) {
    case pcgs::AcceptOutcome::kAccepted:
      std::cout << "accepted\n";
      return kOk;
    case pcgs::AcceptOutcome::kRejected:
      std::cout << "rejected\n";
      return kOk;
    case pcgs::AcceptOutcome::kBoundHit:
      std::cout << "inconclusive\n";
      return kInconclusive;
  }
  return kUsage;
}

int cmd_machine_enum(const std::string& file, std::size_t max_len, std::size_t steps) {
  const pcgs::CounterMachine m = load_counter_machine(file);
  const pcgs::AcceptedSet accepted = pcgs::enumerate_accepted(m, max_len, steps);
  for (const pcgs::MachineWord& w : accepted.words) {
    std::cout << "word: " << machine_word_text(m, w) << "\n";
  }
  std::cout << "words: " << accepted.words.size() << "\n";
  std::cout << "exact: " << yes_no(accepted.exact) << "\n";
  return kOk;
}

int cmd_compile_thm1(const std::string& in, const std::string& out) {
  const pcgs::CounterMachine m = load_counter_machine(in);
  const pcgs::PCGSystem sys = pcgs::compile_theorem1(m);
  write_file(out, pcgs::emit_grammar_file(sys));
  print_size_report(pcgs::size_report(sys));
  return kOk;
}

int cmd_compile_universal(const std::string& in, const std::string& out, std::uint64_t code) {
  const pcgs::RegisterMachine rm = load_register_machine(in);
  const pcgs::FrontEndLayout layout;
  const pcgs::CounterMachine translated =
      pcgs::translate_to_counter(rm, layout.input_counter, layout.output_counter);
  const pcgs::CounterMachine extended = pcgs::attach_universal_front_end(translated, layout);
  pcgs::PCGSystem sys = pcgs::compile_universal(extended);
  pcgs::set_code_axiom(sys, layout.code_counter, code);
  write_file(out, pcgs::emit_grammar_file(sys));
  std::cout << "m: " << extended.rules.size() << "\n";
  print_size_report(pcgs::size_report(sys));
  return kOk;
}

int cmd_size(const std::string& file, const std::string& machine_path) {
  const pcgs::PCGSystem sys = load_grammar(file);
  const pcgs::SizeReport rep = pcgs::size_report(sys);
  print_size_report(rep);
  if (machine_path.empty()) return kOk;

  std::size_t m = 0;
  pcgs::ParsedMachine parsed = pcgs::parse_machine_file(read_file(machine_path));
  if (const pcgs::CounterMachine* cm = std::get_if<pcgs::CounterMachine>(&parsed)) {
    const std::vector<std::string> problems = pcgs::validate(*cm);
    if (!problems.empty()) throw ValidationFailure(machine_path + ": " + problems.front());
    m = cm->rules.size();
  } else {
    const pcgs::RegisterMachine& rm = std::get<pcgs::RegisterMachine>(parsed);
    const std::vector<std::string> problems = pcgs::validate(rm);
    if (!problems.empty()) throw ValidationFailure(machine_path + ": " + problems.front());
    const pcgs::FrontEndLayout layout;
    const pcgs::CounterMachine translated =
        pcgs::translate_to_counter(rm, layout.input_counter, layout.output_counter);
    m = pcgs::attach_universal_front_end(translated, layout).rules.size();
  }
  const std::size_t rule_bound = 48 * m + 51;
  const std::size_t nonterminal_bound = 4 * m + 12;
  std::cout << "m: " << m << "\n";
  std::cout << "rule-bound: " << rule_bound << "\n";
  std::cout << "rules-within-bound: " << yes_no(rep.rules <= rule_bound) << "\n";
  std::cout << "nonterminal-bound: " << nonterminal_bound << "\n";
  std::cout << "nonterminals-within-bound: " << yes_no(rep.nonterminals <= nonterminal_bound) << "\n";
  return rep.rules <= rule_bound && rep.nonterminals <= nonterminal_bound ? kOk : kMismatch;
}

int cmd_verify(const std::string& grammar_file, const std::string& machine_file, std::size_t max_len,
               std::size_t steps, unsigned workers) {
  const pcgs::PCGSystem sys = load_grammar(grammar_file);
  const pcgs::CounterMachine m = load_counter_machine(machine_file);
  const pcgs::EnumerationBounds bounds = pcgs::default_grammar_bounds(steps, max_len);
  const pcgs::EquivalenceReport report = pcgs::check_equivalence(sys, m, max_len, bounds, steps, workers);
  std::cout << "agreed: " << report.agreed.size() << "\n";
  std::cout << "only-grammar: " << report.only_in_grammar.size() << "\n";
  for (const pcgs::NamedWord& w : report.only_in_grammar) std::cout << "  " << named_word_text(w) << "\n";
  std::cout << "only-machine: " << report.only_in_machine.size() << "\n";
  for (const pcgs::NamedWord& w : report.only_in_machine) std::cout << "  " << named_word_text(w) << "\n";
  std::cout << "conclusive: " << yes_no(report.conclusive) << "\n";
  std::cout << "equal: " << yes_no(report.equal()) << "\n";
  if (!report.equal()) return kMismatch;
  if (!report.conclusive) return kInconclusive;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"toolkit for parallel communicating grammar systems and counter machines"};
  app.require_subcommand(1);
  int rc = kOk;

  const std::size_t unbounded = std::numeric_limits<std::size_t>::max();

  CLI::App* pcgs_cmd = app.add_subcommand("pcgs", "grammar system commands");
  pcgs_cmd->require_subcommand(1);

  std::string enum_file;
  std::size_t enum_max_len = unbounded;
  std::size_t enum_max_depth = 64;
  std::size_t enum_max_configs = 1'000'000;
  unsigned enum_workers = 1;
  CLI::App* pcgs_enum = pcgs_cmd->add_subcommand("enum", "enumerate the bounded language of the master");
  pcgs_enum->add_option("file", enum_file, "grammar system file")->required();
  pcgs_enum->add_option("--max-len", enum_max_len, "longest word to report");
  pcgs_enum->add_option("--max-depth", enum_max_depth, "derivation depth bound");
  pcgs_enum->add_option("--max-configs", enum_max_configs, "visited configuration budget");
  pcgs_enum->add_option("--workers", enum_workers, "worker threads");
  pcgs_enum->callback([&] { rc = cmd_pcgs_enum(enum_file, enum_max_len, enum_max_depth, enum_max_configs, enum_workers); });

  std::string trace_file;
  std::string trace_choices;
  CLI::App* pcgs_trace = pcgs_cmd->add_subcommand("trace", "replay a derivation by successor indices");
  pcgs_trace->add_option("file", trace_file, "grammar system file")->required();
  pcgs_trace->add_option("--choices", trace_choices, "comma-separated successor indices")->required();
  pcgs_trace->callback([&] { rc = cmd_pcgs_trace(trace_file, trace_choices); });

  CLI::App* machine_cmd = app.add_subcommand("machine", "counter machine commands");
  machine_cmd->require_subcommand(1);

  std::string run_file;
  std::string run_word;
  std::size_t run_steps = 100'000;
  CLI::App* machine_run = machine_cmd->add_subcommand("run", "test one input word");
  machine_run->add_option("file", run_file, "counter machine file")->required();
  machine_run->add_option("--word", run_word, "input word (characters, comma-separated names, or <eps>)")->required();
  machine_run->add_option("--steps", run_steps, "step bound");
  machine_run->callback([&] { rc = cmd_machine_run(run_file, run_word, run_steps); });

  std::string menum_file;
  std::size_t menum_max_len = 0;
  std::size_t menum_steps = 100'000;
  CLI::App* machine_enum = machine_cmd->add_subcommand("enum", "enumerate accepted words");
  machine_enum->add_option("file", menum_file, "counter machine file")->required();
  machine_enum->add_option("--max-len", menum_max_len, "longest word to test")->required();
  machine_enum->add_option("--steps", menum_steps, "step bound per word");
  machine_enum->callback([&] { rc = cmd_machine_enum(menum_file, menum_max_len, menum_steps); });

  CLI::App* compile_cmd = app.add_subcommand("compile", "machine to grammar system compilers");
  compile_cmd->require_subcommand(1);

  std::string thm1_in;
  std::string thm1_out;
  CLI::App* compile_thm1 = compile_cmd->add_subcommand("thm1", "two-counter machine to six-component system");
  compile_thm1->add_option("file", thm1_in, "counter machine file")->required();
  compile_thm1->add_option("-o,--output", thm1_out, "output grammar system file")->required();
  compile_thm1->callback([&] { rc = cmd_compile_thm1(thm1_in, thm1_out); });

  std::string uni_in;
  std::string uni_out;
  std::uint64_t uni_code = 0;
  CLI::App* compile_uni = compile_cmd->add_subcommand("universal", "register machine to universal-shape system");
  compile_uni->add_option("file", uni_in, "register machine file")->required();
  compile_uni->add_option("--code", uni_code, "code counter value for the axiom override");
  compile_uni->add_option("-o,--output", uni_out, "output grammar system file")->required();
  compile_uni->callback([&] { rc = cmd_compile_universal(uni_in, uni_out, uni_code); });

  std::string size_file;
  std::string size_machine;
  CLI::App* size_cmd = app.add_subcommand("size", "report exact system size");
  size_cmd->add_option("file", size_file, "grammar system file")->required();
  size_cmd->add_option("--machine", size_machine, "machine file to compare against the size bounds");
  size_cmd->callback([&] { rc = cmd_size(size_file, size_machine); });

  std::string verify_grammar;
  std::string verify_machine;
  std::size_t verify_max_len = 0;
  std::size_t verify_steps = 100'000;
  unsigned verify_workers = 1;
  CLI::App* verify_cmd = app.add_subcommand("verify", "bounded language comparison of a system and a machine");
  verify_cmd->add_option("grammar", verify_grammar, "grammar system file")->required();
  verify_cmd->add_option("machine", verify_machine, "counter machine file")->required();
  verify_cmd->add_option("--max-len", verify_max_len, "longest word to compare")->required();
  verify_cmd->add_option("--steps", verify_steps, "machine step bound");
  verify_cmd->add_option("--workers", verify_workers, "worker threads");
  verify_cmd->callback([&] { rc = cmd_verify(verify_grammar, verify_machine, verify_max_len, verify_steps, verify_workers); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  } catch (const pcgs::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationFailure& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kValidation;
  }
  return rc;
}
