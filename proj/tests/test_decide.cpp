#include "doctest.h"

#include <set>

#include "iel/decide.hpp"
#include "iel/gen.hpp"
#include "iel/parse.hpp"

using namespace iel;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
}  // namespace

TEST_CASE("universe is the subformula closure") {
  auto u1 = universe(F("[] p"), {});
  CHECK(u1.size() == 2);
  auto u2 = universe(F("p -> [] p"), {});
  CHECK(u2.size() == 3);
  auto u3 = universe(Formula::bot(), {});
  CHECK(u3.size() == 1);
  auto u4 = universe(F("p"), {F("p /\\ r")});
  CHECK(u4.size() == 3);
}

TEST_CASE("decide validates the axioms and rejects the non-theorems") {
  CHECK(decide({}, F("p -> [] p")));
  CHECK(decide({}, F("[](p -> r) -> [] p -> [] r")));
  CHECK_FALSE(decide({}, F("[] p -> p")));
  CHECK_FALSE(decide({}, Formula::bot()));
  CHECK_FALSE(decide({}, F("((p -> r) -> p) -> p")));
  CHECK_FALSE(decide({}, F("p \\/ (p -> bot)")));
  CHECK(decide({}, F("top")));
  CHECK(decide({}, F("p -> top")));
  CHECK(decide({}, F("[] top")));
  CHECK(decide({F("p")}, F("[] p")));
  CHECK(decide({F("bot")}, F("r")));
  CHECK(decide({F("p \\/ r"), F("p -> r")}, F("r")));
  CHECK_FALSE(decide({F("[] p")}, F("p")));

  DecideStats stats;
  CHECK(decide({}, F("p -> p"), &stats));
  CHECK(stats.universe_size == 2);
  CHECK(stats.sequents_derived > 0);
}

TEST_CASE("decide is monotone in the hypotheses") {
  Rng rng(0x1decu);
  TypedGenConfig cfg;
  for (int i = 0; i < 60; ++i) {
    TypedSample s = gen_typed_term(rng, cfg);
    if (formula_size(s.type) > 4) continue;
    bool base = decide({}, s.type);
    CHECK(base == true);  // generated goals are inhabited
    CHECK(decide({F("r -> p")}, s.type));
  }
}

TEST_CASE("the oracle finds small normal proofs and nothing else") {
  CHECK(oracle_provable({}, F("p -> p"), 3));
  CHECK(oracle_provable({}, F("p -> [] p"), 5));
  CHECK_FALSE(oracle_provable({}, F("p"), 20));
  CHECK_FALSE(oracle_provable({}, Formula::bot(), 20));
  CHECK(oracle_provable({}, F("[](p -> r) -> [] p -> [] r"), 12));
  CHECK_FALSE(oracle_provable({}, F("[] p -> p"), 12));
  CHECK(oracle_provable({F("p /\\ r")}, F("p"), 3));
  CHECK(oracle_provable({}, F("top"), 3));
  CHECK_FALSE(oracle_provable({}, F("top"), 2));  // the closed witness needs three nodes
  CHECK(oracle_provable({F("p")}, F("top"), 2));
  // tighter bounds refuse proofs that need more nodes
  CHECK_FALSE(oracle_provable({}, F("p -> [] p"), 2));
}

TEST_CASE("formula enumeration is sized, ordered and duplicate-free") {
  auto zero = enumerate_formulas_list({"p"}, 0);
  REQUIRE(zero.size() == 3);
  CHECK(equal(zero[0], F("p")));
  CHECK(equal(zero[1], Formula::bot()));
  CHECK(equal(zero[2], Formula::top()));

  auto one = enumerate_formulas_list({"p"}, 1);
  std::set<std::string> printed;
  for (const auto& f : one) printed.insert(print_formula(f));
  CHECK(printed.size() == one.size());  // duplicate-free
  for (const char* want : {"[] p", "p -> p", "p /\\ p", "p \\/ p", "p -> bot"})
    CHECK(printed.count(want));
  for (const auto& f : one) CHECK(formula_size(f) <= 1);

  auto two = enumerate_formulas_list({"p", "r"}, 2);
  std::set<std::string> p2;
  for (const auto& f : two) p2.insert(print_formula(f));
  CHECK(p2.size() == two.size());
  // sizes 0..2 over two atoms with bot/top leaves: 4 + 52 + 1300
  CHECK(two.size() == 1356);
}

TEST_CASE("decide agrees with the oracle on small formulas") {
  auto formulas = enumerate_formulas_list({"p", "r"}, 2);
  for (const auto& f : formulas) {
    bool d = decide({}, f);
    bool o = oracle_provable({}, f, 12);
    CAPTURE(print_formula(f));
    CHECK(d == o);
  }
}

TEST_CASE("metatheory scans report no counterexamples") {
  MetaReport r1 = check_metatheory(MetaProperty::Reflection, {"p"}, 2, false);
  CHECK(r1.checked > 0);
  CHECK(r1.counterexamples.empty());

  MetaReport r2 = check_metatheory(MetaProperty::Disjunction, {"p", "r"}, 2, false);
  CHECK(r2.checked > 0);
  CHECK(r2.counterexamples.empty());

  MetaReport r3 = check_metatheory(MetaProperty::Consistency, {}, 0, false);
  CHECK(r3.counterexamples.empty());

  MetaReport r4 = check_metatheory(MetaProperty::WeakDisjunction, {"p", "r"}, 2, false);
  CHECK(r4.counterexamples.empty());

  MetaReport r5 = check_metatheory(MetaProperty::BoxPrimality, {"p", "r"}, 3, false);
  CHECK(r5.counterexamples.empty());
}

TEST_CASE("oversized universes are rejected with a clear error") {
  // build a formula with more than 64 distinct subformulas
  FormulaPtr f = F("p");
  for (int i = 0; i < 70; ++i) f = Formula::box(f);
  CHECK_THROWS_AS(decide({}, f), DecideError);
}
