#include "doctest.h"

#include <stdexcept>

#include "pcgs/construct.hpp"
#include "pcgs/equivalence.hpp"

#include "helpers.hpp"

using namespace pcgs;
using testutil::make_anbn;
using testutil::make_loop_machine;
using testutil::sym;

TEST_SUITE("equivalence") {

TEST_CASE("default bounds scale with the step budget and word length") {
  const EnumerationBounds b = default_grammar_bounds(100, 6);
  CHECK(b.max_depth == 8 * 100 + 6 * 6 + 48);
  CHECK(b.max_configurations == 10'000'000);
  CHECK(b.max_string_length == kUnbounded);
  CHECK(b.max_master_terminals == 6);
}

TEST_CASE("compiled counting system matches its machine up to length six") {
  const CounterMachine m = make_anbn();
  const PCGSystem sys = compile_theorem1(m);
  const EquivalenceReport r = check_equivalence(sys, m, 6, default_grammar_bounds(1000, 6), 1000);
  CHECK(r.conclusive);
  CHECK(r.equal());
  CHECK(r.only_in_grammar.empty());
  CHECK(r.only_in_machine.empty());
  const std::vector<NamedWord> want = {{"a", "b"}, {"a", "a", "b", "b"}, {"a", "a", "a", "b", "b", "b"}};
  CHECK(r.agreed == want);
}

TEST_CASE("the looping machine and its compiled system agree including the empty word") {
  const CounterMachine m = make_loop_machine();
  const PCGSystem sys = compile_theorem1(m);
  const EquivalenceReport r = check_equivalence(sys, m, 3, default_grammar_bounds(500, 3), 500);
  CHECK(r.conclusive);
  CHECK(r.equal());
  const std::vector<NamedWord> want = {{}, {"a"}, {"a", "a"}, {"a", "a", "a"}};
  CHECK(r.agreed == want);
}

TEST_CASE("multiple workers reproduce the comparison") {
  const CounterMachine m = make_anbn();
  const PCGSystem sys = compile_theorem1(m);
  const EquivalenceReport base = check_equivalence(sys, m, 6, default_grammar_bounds(1000, 6), 1000, 1);
  const EquivalenceReport wide = check_equivalence(sys, m, 6, default_grammar_bounds(1000, 6), 1000, 4);
  CHECK(base.agreed == wide.agreed);
  CHECK(base.conclusive == wide.conclusive);
}

TEST_CASE("a spurious master production surfaces as a grammar-only word") {
  const CounterMachine m = make_anbn();
  PCGSystem sys = compile_theorem1(m);
  Component& master = sys.components[sys.master];
  master.productions.push_back({sym(sys.symbols, "S"), {sym(sys.symbols, "a")}});
  canonicalize(master);

  EnumerationBounds bounds = default_grammar_bounds(1000, 6);
  bounds.max_string_length = 40;
  bounds.max_configurations = 300000;
  // The spurious branch parks the master on a terminal string while the
  // other components keep growing, so the budget truncates the search; the
  // report need not be conclusive, but the bad word must still surface.
  const EquivalenceReport r = check_equivalence(sys, m, 6, bounds, 1000);
  CHECK(!r.equal());
  REQUIRE(!r.only_in_grammar.empty());
  CHECK(r.only_in_grammar.front() == NamedWord{"a"});
}

TEST_CASE("a machine-only word lands in the other difference set") {
  // Accepts just the single-letter word over the same two-letter alphabet.
  CounterMachine one;
  one.alphabet = {"a", "b"};
  one.states = {"q0", "qF"};
  one.start = 0;
  one.final_state = 1;
  one.counters = 2;
  one.rules = {
      {.from = 0, .to = 1, .read = 0, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
  };
  const PCGSystem sys = compile_theorem1(make_anbn());
  const EquivalenceReport r = check_equivalence(sys, one, 4, default_grammar_bounds(1000, 4), 1000);
  CHECK(!r.equal());
  REQUIRE(!r.only_in_machine.empty());
  CHECK(r.only_in_machine.front() == NamedWord{"a"});
  CHECK(r.agreed.empty());
  const std::vector<NamedWord> grammar_only = {{"a", "b"}, {"a", "a", "b", "b"}};
  CHECK(r.only_in_grammar == grammar_only);
}

TEST_CASE("alphabet mismatches are rejected") {
  CounterMachine unary;
  unary.alphabet = {"a"};
  unary.states = {"q0", "qF"};
  unary.start = 0;
  unary.final_state = 1;
  unary.counters = 2;
  unary.rules = {
      {.from = 0, .to = 1, .read = kReadLambda, .guards = {Guard::kZero, Guard::kZero}, .actions = {0, 0}},
  };
  const PCGSystem sys = compile_theorem1(make_anbn());
  CHECK_THROWS_AS(check_equivalence(sys, unary, 3, default_grammar_bounds(100, 3), 100), std::invalid_argument);
}

}
