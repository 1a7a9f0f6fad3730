#include "doctest.h"

#include <stdexcept>

#include "pcgs/grammar.hpp"

#include "helpers.hpp"

using namespace pcgs;
using testutil::SystemBuilder;
using testutil::sym;
using testutil::word;

TEST_SUITE("grammar") {

TEST_CASE("symbol table interning and kinds") {
  SymbolTable t;
  const SymbolId s = t.add_nonterminal("S");
  const SymbolId a = t.add_terminal("a");
  CHECK(t.add_nonterminal("S") == s);
  CHECK(t.add_terminal("a") == a);
  CHECK(t.is_nonterminal(s));
  CHECK(t.is_terminal(a));
  CHECK(t.name(s) == "S");
  CHECK(t.name(a) == "a");
  CHECK(t.nonterminal_count() == 1);
  CHECK(t.terminal_count() == 1);
  CHECK(t.find("S") == s);
  CHECK(!t.find("missing").has_value());

  t.set_component_count(3);
  CHECK(t.query_count() == 3);
  for (std::uint32_t i = 0; i < 3; ++i) {
    const SymbolId q = t.query_symbol(i);
    CHECK(t.is_query(q));
    CHECK(t.query_component(q) == i);
    CHECK(t.name(q) == "Q" + std::to_string(i + 1));
    CHECK(t.find(t.name(q)) == q);
  }
  CHECK_THROWS_AS(t.set_component_count(2), std::logic_error);
}

TEST_CASE("same name under two kinds stays representable") {
  // validate() reports the disjointness violation, so the table itself must
  // be able to hold both entries.
  SymbolTable t;
  const SymbolId nt = t.add_nonterminal("x");
  const SymbolId term = t.add_terminal("x");
  CHECK(nt != term);
  CHECK(t.is_nonterminal(nt));
  CHECK(t.is_terminal(term));
  CHECK(t.add_terminal("x") == term);
  CHECK(t.add_nonterminal("x") == nt);
}

TEST_CASE("validate accepts a well-formed system") {
  SystemBuilder b(2, {"S", "X"}, {"a"});
  b.axiom(0, {"S"}).prod(0, "S", {"a", "Q2"});
  b.axiom(1, {"X"}).prod(1, "X", {"a"});
  const PCGSystem sys = b.finish();
  CHECK(validate(sys).empty());
}

TEST_CASE("validate reports structural violations") {
  SystemBuilder b(1, {"S"}, {"a"});
  b.axiom(0, {"S"}).prod(0, "S", {"a"});
  PCGSystem sys = b.finish();

  SUBCASE("terminal on a left-hand side") {
    sys.components[0].productions.push_back({sym(sys.symbols, "a"), {}});
    const auto v = validate(sys);
    REQUIRE(!v.empty());
    CHECK(v.front().component == 0);
    CHECK(v.front().production == 1);
    CHECK(!format(v.front()).empty());
  }
  SUBCASE("query on a left-hand side") {
    sys.components[0].productions.push_back({sys.symbols.query_symbol(0), {}});
    CHECK(!validate(sys).empty());
  }
  SUBCASE("terminal in an axiom") {
    sys.components[0].axiom = word(sys.symbols, {"S", "a"});
    CHECK(!validate(sys).empty());
  }
  SUBCASE("empty axiom") {
    sys.components[0].axiom.clear();
    CHECK(!validate(sys).empty());
  }
  SUBCASE("master out of range") {
    sys.master = 7;
    CHECK(!validate(sys).empty());
  }
  SUBCASE("name shared by a terminal and a nonterminal") {
    sys.symbols.add_terminal("S");
    CHECK(!validate(sys).empty());
  }
}

TEST_CASE("canonicalize sorts and deduplicates productions") {
  SymbolTable t;
  const SymbolId s = t.add_nonterminal("S");
  const SymbolId x = t.add_nonterminal("X");
  const SymbolId a = t.add_terminal("a");
  t.set_component_count(1);
  Component c;
  c.axiom = {s};
  c.productions = {{x, {a}}, {s, {x, a}}, {s, {a}}, {x, {a}}};
  canonicalize(c);
  REQUIRE(c.productions.size() == 3);
  // Order is by symbol id (interning order), lhs first then rhs; X was
  // interned before a, so the X a right side sorts ahead of the bare a.
  CHECK(c.productions[0] == Production{s, {x, a}});
  CHECK(c.productions[1] == Production{s, {a}});
  CHECK(c.productions[2] == Production{x, {a}});
}

TEST_CASE("word classification helpers") {
  SystemBuilder b(2, {"S"}, {"a", "b"});
  b.axiom(0, {"S"}).prod(0, "S", {"a"});
  b.axiom(1, {"S"}).prod(1, "S", {"b"});
  const PCGSystem sys = b.finish();
  const SymbolTable& t = sys.symbols;

  CHECK(terminal_only(t, {}));
  CHECK(terminal_only(t, word(t, {"a", "b"})));
  CHECK(!terminal_only(t, word(t, {"a", "S"})));
  CHECK(!terminal_only(t, word(t, {"Q1"})));
  CHECK(has_query(t, word(t, {"a", "Q2"})));
  CHECK(!has_query(t, word(t, {"a", "S"})));
  CHECK(has_nonterminal(t, word(t, {"a", "S"})));
  CHECK(!has_nonterminal(t, word(t, {"a", "Q1"})));
  CHECK(count_terminals(t, word(t, {"a", "S", "b", "a"})) == 3);
  CHECK(count_terminals(t, {}) == 0);
}

TEST_CASE("initial configuration copies the axioms") {
  SystemBuilder b(2, {"S", "X"}, {"a"});
  b.axiom(0, {"S", "X"}).prod(0, "S", {"a"});
  b.axiom(1, {"X"}).prod(1, "X", {"a"});
  const PCGSystem sys = b.finish();
  const Configuration init = initial_configuration(sys);
  REQUIRE(init.strings.size() == 2);
  CHECK(init.strings[0] == word(sys.symbols, {"S", "X"}));
  CHECK(init.strings[1] == word(sys.symbols, {"X"}));
}

TEST_CASE("fingerprints separate configurations that flatten identically") {
  SystemBuilder b(2, {"S"}, {"a", "b"});
  b.axiom(0, {"S"}).prod(0, "S", {"a"});
  b.axiom(1, {"S"}).prod(1, "S", {"b"});
  const PCGSystem sys = b.finish();
  const SymbolTable& t = sys.symbols;

  Configuration c1{{word(t, {"a", "b"}), word(t, {"a"})}};
  Configuration c2{{word(t, {"a", "b"}), word(t, {"a"})}};
  CHECK(fingerprint(c1) == fingerprint(c2));

  // Same symbols, different split across the component boundary.
  Configuration c3{{word(t, {"a"}), word(t, {"b", "a"})}};
  CHECK(!(fingerprint(c1) == fingerprint(c3)));

  // Empty string on the other side.
  Configuration c4{{word(t, {"a"}), {}}};
  Configuration c5{{{}, word(t, {"a"})}};
  CHECK(!(fingerprint(c4) == fingerprint(c5)));

  // Order within one string matters.
  Configuration c6{{word(t, {"a", "b"}), {}}};
  Configuration c7{{word(t, {"b", "a"}), {}}};
  CHECK(!(fingerprint(c6) == fingerprint(c7)));
}

}
