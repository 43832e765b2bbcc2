#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "iel/gen.hpp"
#include "iel/parse.hpp"
#include "iel/term.hpp"

using namespace iel;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("formula parsing follows the declared precedences") {
  CHECK(equal(F("p -> [] p"), Formula::impl(Formula::atom("p"), Formula::box(Formula::atom("p")))));
  CHECK(equal(F("[] (p \\/ q1)"),
              Formula::box(Formula::disj(Formula::atom("p"), Formula::atom("q1")))));
  CHECK(equal(F("p -> q1 -> p"),
              Formula::impl(Formula::atom("p"),
                            Formula::impl(Formula::atom("q1"), Formula::atom("p")))));
  CHECK(equal(F("p /\\ q \\/ r"), Formula::disj(Formula::conj(F("p"), F("q")), F("r"))));
  CHECK(equal(F("[] p -> r"), Formula::impl(Formula::box(F("p")), F("r"))));
  CHECK(equal(F("bot"), Formula::bot()));
  CHECK(equal(F("top"), Formula::top()));
  CHECK_THROWS_AS(F("p ->"), ParseError);
  CHECK_THROWS_AS(F("(p"), ParseError);
  CHECK_THROWS_AS(F("p q"), ParseError);
}

TEST_CASE("term parsing covers the surface grammar") {
  TermPtr t = T("\\x:p. bel in x");
  REQUIRE(t->kind() == TKind::Lam);
  CHECK(t->body()->kind() == TKind::Box);
  CHECK(t->body()->box_arity() == 0);
  CHECK(t->body()->body()->kind() == TKind::Var);

  TermPtr b = T("bel u = t in u");
  REQUIRE(b->kind() == TKind::Box);
  REQUIRE(b->box_arity() == 1);
  CHECK(b->binders()[0].name == "u");
  CHECK_FALSE(b->binders()[0].ann.has_value());
  CHECK(b->box_arg(0)->kind() == TKind::Var);

  TermPtr ann = T("bel u:p = t in u");
  REQUIRE(ann->binders()[0].ann.has_value());
  CHECK(equal(*ann->binders()[0].ann, F("p")));

  TermPtr c = T("case s of {x => i1[p \\/ r] x | y => i2[p \\/ r] y}");
  REQUIRE(c->kind() == TKind::Case);
  CHECK(c->left()->kind() == TKind::Inj);
  CHECK(c->left()->index() == 1);
  CHECK(c->right()->index() == 2);

  CHECK(T("f x y")->fun()->kind() == TKind::App);        // left-assoc application
  CHECK(T("p1 p2 x")->arg()->kind() == TKind::Proj);     // nested projections
  CHECK(T("p1 x y")->kind() == TKind::App);              // (p1 x) y
  CHECK(T("efq[p] x")->kind() == TKind::Efq);
  CHECK(T("unit x")->kind() == TKind::Unit);
  CHECK(T("<x, y>")->kind() == TKind::Pair);
  CHECK_THROWS_AS(T("case x of {bel => y | z => w}"), ParseError);  // reserved binder
  CHECK_THROWS_AS(T("bel u = t u"), ParseError);                    // missing 'in'
}

TEST_CASE("printing matches the expected concrete syntax") {
  CHECK(print_formula(F("p -> [] p")) == "p -> [] p");
  CHECK(print_term(Term::box({}, {}, Term::var("x"))) == "bel in x");
  CHECK(print_term(Term::proj(1, Term::pair(Term::var("x"), Term::var("y")))) == "p1 <x, y>");
  CHECK(print_term(T("(\\x:p. x) y")) == "(\\x:p. x) y");
}

TEST_CASE("print then parse is the identity") {
  Rng rng(0xf00du);
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen_untyped_term(rng, 20);
    TermPtr back = parse_term(print_term(t));
    CAPTURE(print_term(t));
    CHECK(alpha_eq(t, back));
  }
  for (int i = 0; i < 400; ++i) {
    FormulaPtr f = parse_formula(print_formula(F("p")));
    (void)f;
  }
  Rng frng(0xbeefu);
  for (int i = 0; i < 400; ++i) {
    TypedGenConfig cfg;
    cfg.with_bot = true;
    TypedSample s = gen_typed_term(frng, cfg);
    FormulaPtr f = s.type;
    CHECK(equal(f, parse_formula(print_formula(f))));
    CHECK(alpha_eq(s.term, parse_term(print_term(s.term))));
  }
}

TEST_CASE("alpha equality identifies terms up to bound names") {
  CHECK(alpha_eq(T("\\x:p. x"), T("\\y:p. y")));
  CHECK_FALSE(alpha_eq(T("\\x:p. x"), T("\\x:p. z")));
  CHECK_FALSE(alpha_eq(T("\\x:p. x"), T("\\x:r. x")));  // annotations matter
  CHECK(alpha_eq(T("bel u:p = t in u"), T("bel w:p = t in w")));
  CHECK_FALSE(alpha_eq(T("bel u:p = t in u"), T("bel w:r = t in w")));
  CHECK_FALSE(alpha_eq(T("bel u = t in u"), T("bel w:p = t in w")));  // unresolved vs resolved
  CHECK(alpha_eq(T("case s of {x => x | y => y}"), T("case s of {a => a | b => b}")));
  CHECK(canonical_key(T("\\x:p. x")) == canonical_key(T("\\y:p. y")));
  CHECK(canonical_key(T("\\x:p. x")) != canonical_key(T("\\x:p. z")));
}

TEST_CASE("substitution is capture avoiding") {
  CHECK(alpha_eq(subst(Term::var("x"), "x", T("<y, z>")), T("<y, z>")));

  TermPtr t = T("\\y:p. x y");
  TermPtr r = subst(t, "x", Term::var("y"));
  CHECK(alpha_eq(r, T("\\w:p. y w")));
  CHECK(free_vars(r).count("y") == 1);

  TermPtr b = T("bel u:p = x in u");
  TermPtr rb = subst(b, "x", Term::var("t"));
  CHECK(alpha_eq(rb, T("bel u:p = t in u")));

  // binder occurrences in the box body are untouched
  TermPtr shadow = T("bel u:p = z in u");
  CHECK(alpha_eq(subst(shadow, "u", Term::var("w")), shadow));

  // capture through a box body
  TermPtr cap = T("bel u:p = z in <x, u>");
  TermPtr rc = subst(cap, "x", Term::var("u"));
  CHECK(alpha_eq(rc, T("bel w:p = z in <u, w>")));
}

TEST_CASE("substitution properties over the generator corpus") {
  Rng rng(0x5eedu);
  for (int i = 0; i < 300; ++i) {
    TermPtr t = gen_untyped_term(rng, 16);
    CHECK(alpha_eq(subst(t, "x", Term::var("x")), t));
    if (!free_vars(t).count("zz")) CHECK(alpha_eq(subst(t, "zz", T("<y, y>")), t));
  }
}

TEST_CASE("free variables respect binding structure") {
  CHECK(free_vars(Term::var("x")) == std::set<std::string>{"x"});
  CHECK(free_vars(T("\\x:p. x")).empty());
  CHECK(free_vars(T("bel u:p = z in u")) == std::set<std::string>{"z"});
  CHECK(free_vars(T("case s of {x => x | y => z}")) == std::set<std::string>{"s", "z"});
}

TEST_CASE("subformulas computes the reflexive closure") {
  auto sub = subformulas(F("[] p"));
  CHECK(sub.size() == 2);
  CHECK(is_subformula(F("p"), F("[] p")));

  auto sub2 = subformulas(F("p -> q1 /\\ p"));
  CHECK(sub2.size() == 4);

  auto sub3 = subformulas(Formula::bot());
  CHECK(sub3.size() == 1);

  // monotonicity on a corpus of formulas
  Rng rng(0xdada);
  TypedGenConfig cfg;
  for (int i = 0; i < 100; ++i) {
    TypedSample s = gen_typed_term(rng, cfg);
    for (const auto& g : subformulas(s.type))
      for (const auto& h : subformulas(g)) CHECK(is_subformula(h, s.type));
  }
}

TEST_CASE("paths address children in declaration order") {
  TermPtr t = T("(\\x:p. x) (p1 <y, z>)");
  CHECK(subterm_at(t, {1})->kind() == TKind::Proj);
  CHECK(subterm_at(t, {1, 0})->kind() == TKind::Pair);
  CHECK(subterm_at(t, {1, 0, 1})->name() == "z");
  TermPtr r = replace_at(t, {1, 0, 1}, Term::var("w"));
  CHECK(print_term(r) == "(\\x:p. x) (p1 <y, w>)");
  CHECK_THROWS(subterm_at(t, {5}));
}
