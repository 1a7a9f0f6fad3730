#ifndef PCGS_TEXTIO_HPP
#define PCGS_TEXTIO_HPP

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

#include "pcgs/counter_machine.hpp"
#include "pcgs/grammar.hpp"
#include "pcgs/register_machine.hpp"

namespace pcgs {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Grammar file layout (tokens are whitespace-separated, `#` starts a comment):
//
//   pcgs nonreturning master=2
//   nonterminals: S A Z ...
//   terminals: a b
//   component 1:
//   axiom: S
//   S -> t0
//   t0 -> a C1
//   H2[t0] -> <eps>
//   ...
//
// Query symbols Q1..Qn are implicit; names starting with Q followed by
// digits are reserved for them. parse(emit(s)) == s for canonical systems.
PCGSystem parse_grammar_file(std::string_view text);
std::string emit_grammar_file(const PCGSystem& system);

// Machine files open with `counters <n>` or `registers <m>`; the keyword
// selects the variant.
using ParsedMachine = std::variant<CounterMachine, RegisterMachine>;
ParsedMachine parse_machine_file(std::string_view text);

std::string emit_counter_machine_file(const CounterMachine& m);
std::string emit_register_machine_file(const RegisterMachine& m);

// `<eps>` for the empty word, otherwise names joined by single spaces.
std::string format_word(const SymbolTable& symbols, const Word& word);
// `(s1, s2, ..., sn)` with each string formatted as above.
std::string format_configuration(const SymbolTable& symbols, const Configuration& config);

bool valid_symbol_name(std::string_view name);
bool reserved_query_name(std::string_view name);

}  // namespace pcgs

#endif
