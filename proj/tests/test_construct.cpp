#include "doctest.h"

#include <algorithm>
#include <stdexcept>

#include "pcgs/construct.hpp"
#include "pcgs/derivation.hpp"
#include "pcgs/textio.hpp"

#include "helpers.hpp"

using namespace pcgs;
using testutil::make_anbn;
using testutil::make_countdown_machine;
using testutil::make_loop_machine;
using testutil::sym;
using testutil::word;
using testutil::word_names;

namespace {

bool has_production(const PCGSystem& sys, std::size_t comp, const std::string& lhs,
                    const std::vector<std::string>& rhs) {
  const Production want{sym(sys.symbols, lhs), word(sys.symbols, rhs)};
  const auto& prods = sys.components[comp].productions;
  return std::find(prods.begin(), prods.end(), want) != prods.end();
}

}  // namespace

TEST_SUITE("construct") {

TEST_CASE("counter word table") {
  CHECK(sigma(1, Guard::kBlank) == "AA");
  CHECK(sigma(0, Guard::kBlank) == "A");
  CHECK(sigma(-1, Guard::kBlank) == "");
  CHECK(sigma(1, Guard::kZero) == "A");
  CHECK(sigma(0, Guard::kZero) == "");
  CHECK_THROWS_AS(sigma(-1, Guard::kZero), std::domain_error);
  CHECK_THROWS_AS(sigma(2, Guard::kBlank), std::invalid_argument);
}

TEST_CASE("final normal form detection") {
  CounterMachine m = make_anbn();
  CHECK(validate_final_normal_form(m));

  SUBCASE("entering the final state under a blank guard") {
    m.rules.push_back({.from = 0, .to = 2, .read = kReadLambda, .guards = {Guard::kBlank, Guard::kZero}, .actions = {0, 0}});
    CHECK(!validate_final_normal_form(m));
  }
  SUBCASE("entering the final state while touching a counter") {
    m.rules[4].actions[0] = +1;
    CHECK(!validate_final_normal_form(m));
  }
}

TEST_CASE("the two-counter compiler rejects unsuitable machines") {
  SUBCASE("wrong counter count") {
    CounterMachine m = make_anbn();
    m.counters = 3;
    for (auto& r : m.rules) {
      r.guards.push_back(Guard::kZero);
      r.actions.push_back(0);
    }
    CHECK_THROWS_AS(compile_theorem1(m), std::invalid_argument);
  }
  SUBCASE("blank reads") {
    CounterMachine m = make_anbn();
    m.rules[4].read = kReadBlank;
    CHECK_THROWS_AS(compile_theorem1(m), std::invalid_argument);
  }
  SUBCASE("no final normal form") {
    CounterMachine m = make_anbn();
    m.rules[4].guards[0] = Guard::kBlank;
    m.rules[4].actions[0] = -1;
    CHECK_THROWS_AS(compile_theorem1(m), std::invalid_argument);
  }
  SUBCASE("invalid machine") {
    CounterMachine m = make_anbn();
    m.start = 9;
    CHECK_THROWS_AS(compile_theorem1(m), std::invalid_argument);
  }
}

TEST_CASE("compiled counting system has the hand-counted size") {
  const PCGSystem sys = compile_theorem1(make_anbn());
  CHECK(validate(sys).empty());
  const SizeReport r = size_report(sys);
  CHECK(r.components == 6);
  CHECK(r.rules == 101);
  CHECK(r.nonterminals == 47);
  CHECK(r.queries == 5);
  CHECK(sys.master == 1);
  CHECK(sys.mode == Mode::kNonReturning);
}

TEST_CASE("two-transition machine compiles to the hand-counted families") {
  const CounterMachine m = make_loop_machine();
  const PCGSystem sys = compile_theorem1(m);
  CHECK(validate(sys).empty());

  const SizeReport r = size_report(sys);
  CHECK(r.components == 6);
  CHECK(r.rules == 56);
  CHECK(r.nonterminals == 26);
  CHECK(r.queries == 5);

  // Per-component rule counts: selector walks both transitions, the master
  // emits a for the reading one only, both counters take the zero branch of
  // both transitions, the checker queries both counters.
  CHECK(sys.components[0].productions.size() == 10);
  CHECK(sys.components[1].productions.size() == 13);
  CHECK(sys.components[2].productions.size() == 10);
  CHECK(sys.components[3].productions.size() == 10);
  CHECK(sys.components[4].productions.size() == 9);
  CHECK(sys.components[5].productions.size() == 4);

  // Spot checks, one per family.
  CHECK(has_production(sys, 0, "S", {"t0"}));
  CHECK(has_production(sys, 0, "t0", {"D1[t0]"}));
  CHECK(has_production(sys, 0, "D2[t0]", {"t1"}));
  CHECK(has_production(sys, 0, "D2[t1]", {"F"}));
  CHECK(has_production(sys, 1, "t0", {"a", "C1"}));
  CHECK(has_production(sys, 1, "t1", {"C1"}));
  CHECK(has_production(sys, 1, "F'", {"Q5", "Q3", "Q4"}));
  CHECK(has_production(sys, 1, "H2[t0]", {}));
  CHECK(has_production(sys, 2, "S", {"Q1", "Z"}));
  CHECK(has_production(sys, 2, "t0", {"H1[t0]"}));
  CHECK(has_production(sys, 2, "H2[t0]", {"Q1"}));
  CHECK(has_production(sys, 2, "A", {"Q6"}));
  CHECK(has_production(sys, 4, "E1[t0]", {"E2[t0]", "Q3", "Q4"}));
  CHECK(has_production(sys, 4, "E2[t0]", {"Q1"}));
  CHECK(has_production(sys, 5, "M2", {"M0"}));
}

TEST_CASE("counter words depend on the guard") {
  const PCGSystem sys = compile_theorem1(make_anbn());
  // Counter 1, increment from empty: the zero branch restores one A.
  CHECK(has_production(sys, 2, "t0", {"H1[t0]"}));
  CHECK(has_production(sys, 2, "H2[t0]", {"Q1", "A"}));
  // Counter 1, increment from nonempty: the spent A comes back plus one.
  CHECK(has_production(sys, 2, "t1", {"Q1"}));
  CHECK(has_production(sys, 2, "D2[t1]", {"Q1", "A", "A"}));
  // Counter 1, decrement: the spent A stays gone.
  CHECK(has_production(sys, 2, "D2[t2]", {"Q1"}));
  // Counter 2 never moves and is always claimed empty.
  CHECK(has_production(sys, 3, "H2[t0]", {"Q1"}));
}

TEST_CASE("replay of the compiled counting system walks the documented opening") {
  const PCGSystem sys = compile_theorem1(make_anbn());
  const auto trace = replay_trace(sys, {0, 0});
  REQUIRE(trace.size() == 3);
  CHECK(format_configuration(sys.symbols, trace[0]) == "(S, S, S, S, S, S)");
  CHECK(format_configuration(sys.symbols, trace[1]) == "(t0, Q1, Q1 Z, Q1 Z, Q1, M0)");
  CHECK(format_configuration(sys.symbols, trace[2]) == "(t0, t0, t0 Z, t0 Z, t0, M0)");
}

TEST_CASE("universal compiler layout") {
  const PCGSystem sys = compile_universal(make_countdown_machine());
  CHECK(validate(sys).empty());
  CHECK(sys.master == 1);
  CHECK(sys.mode == Mode::kNonReturning);
  // Selector, master, one component per counter, checker, clock.
  CHECK(sys.component_count() == 6);
  CHECK(component_for_counter(1) == 2);
  CHECK(component_for_counter(2) == 3);
}

TEST_CASE("axiom overrides") {
  PCGSystem sys = compile_universal(make_countdown_machine());
  const Word plain = build_universal_axiom(sys.symbols, 0);
  CHECK(plain == word(sys.symbols, {"S"}));
  const Word coded = build_universal_axiom(sys.symbols, 3);
  CHECK(coded == word(sys.symbols, {"A", "A", "A", "S"}));

  const PCGSystem untouched = sys;
  set_code_axiom(sys, 2, 0);
  CHECK(sys == untouched);
  set_code_axiom(sys, 2, 2);
  CHECK(sys.components[3].axiom == word(sys.symbols, {"A", "A", "S"}));

  CHECK_THROWS_AS(set_code_axiom(sys, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(set_code_axiom(sys, 9, 1), std::out_of_range);

  SymbolTable bare;
  CHECK_THROWS_AS(build_universal_axiom(bare, 1), std::invalid_argument);
}

TEST_CASE("code axioms select the bounded language") {
  const PCGSystem base = compile_universal(make_countdown_machine());
  EnumerationBounds bounds;
  bounds.max_master_terminals = 3;
  bounds.max_configurations = 500000;

  auto language = [&](std::uint64_t code) {
    PCGSystem sys = base;
    set_code_axiom(sys, 2, code);
    const EnumerationResult r = enumerate_language(sys, bounds);
    REQUIRE(r.exhausted);
    return word_names(sys.symbols, r.words);
  };

  CHECK(language(0) == std::vector<std::string>{"<eps>"});
  CHECK(language(1) == std::vector<std::string>{"a"});
  CHECK(language(2) == std::vector<std::string>{"a a"});

  const EnumerationResult plain = enumerate_language(base, bounds);
  REQUIRE(plain.exhausted);
  CHECK(word_names(base.symbols, plain.words) == std::vector<std::string>{"<eps>"});
}

}
