#include "doctest.h"

#include "iel/cps.hpp"
#include "iel/gen.hpp"
#include "iel/parse.hpp"
#include "iel/rewrite.hpp"

using namespace iel;

namespace {

FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }

SimpleTypePtr atom(const char* s) { return SimpleType::atom(s); }
SimpleTypePtr neg(SimpleTypePtr t) { return SimpleType::neg(std::move(t)); }

// Strips lambda annotations for shape comparisons against the clause forms.
SttTermPtr erase(const SttTermPtr& t) {
  switch (t->kind()) {
    case SttKind::Var: return t;
    case SttKind::Lam: return SttTerm::lam(t->name(), std::nullopt, erase(t->body()));
    case SttKind::App: return SttTerm::app(erase(t->fun()), erase(t->arg()));
  }
  return t;
}

}  // namespace

TEST_CASE("the type translation unfolds the negative clauses") {
  // p| = ~~p
  CHECK(stt_type_equal(neg_type(F("p")), neg(neg(atom("p")))));
  // ([]p)| = ~~ p|  (the corrected box clause)
  CHECK(stt_type_equal(neg_type(F("[] p")), neg(neg(neg(neg(atom("p")))))));
  // (p -> p)| = ~~(p| -> p|)
  SimpleTypePtr pbar = neg(neg(atom("p")));
  CHECK(stt_type_equal(neg_type(F("p -> p")), neg(neg(SimpleType::arrow(pbar, pbar)))));
  // conjunction and disjunction clauses
  SimpleTypePtr rbar = neg(neg(atom("r")));
  CHECK(stt_type_equal(neg_type(F("p /\\ r")),
                       neg(neg(neg(SimpleType::arrow(pbar, neg(rbar)))))));
  CHECK(stt_type_equal(neg_type(F("p \\/ r")),
                       neg(neg(SimpleType::arrow(neg(pbar), neg(neg(rbar)))))));
  CHECK_THROWS_AS(neg_type(F("bot")), CpsError);
  CHECK_THROWS_AS(neg_type(F("top -> p")), CpsError);
  CHECK_THROWS_AS(neg_type(F("q")), CpsError);  // the answer atom is reserved
}

TEST_CASE("plain translation clause shapes") {
  Context ctx;
  ctx.bind("x", F("p"));
  ctx.bind("y", F("r"));
  ctx.bind("z", F("[] p"));

  // x| = \k. x k
  CHECK(stt_alpha_eq(erase(cps(Term::var("x"), ctx)),
                     SttTerm::lam("k", std::nullopt,
                                  SttTerm::app(SttTerm::var("x"), SttTerm::var("k")))));
  // <x, y>| = \k. k (\u. u x| y|)
  SttTermPtr expected_pair = SttTerm::lam(
      "k", std::nullopt,
      SttTerm::app(SttTerm::var("k"),
                   SttTerm::lam("u", std::nullopt,
                                SttTerm::app(SttTerm::app(SttTerm::var("u"),
                                                          SttTerm::lam("k1", std::nullopt,
                                                                       SttTerm::app(SttTerm::var("x"),
                                                                                    SttTerm::var("k1")))),
                                             SttTerm::lam("k2", std::nullopt,
                                                          SttTerm::app(SttTerm::var("y"),
                                                                       SttTerm::var("k2")))))));
  CHECK(stt_alpha_eq(erase(cps(T("<x, y>"), ctx)), expected_pair));

  // (bel w = z in w-as-body)| = \k. z|(\w. k w|)   (box clause at n = 1)
  SttTermPtr img = erase(cps(T("bel w = z in w"), ctx));
  SttTermPtr expected_box = SttTerm::lam(
      "k", std::nullopt,
      SttTerm::app(SttTerm::lam("k3", std::nullopt,
                                SttTerm::app(SttTerm::var("z"), SttTerm::var("k3"))),
                   SttTerm::lam("w", std::nullopt,
                                SttTerm::app(SttTerm::var("k"),
                                             SttTerm::lam("k4", std::nullopt,
                                                          SttTerm::app(SttTerm::var("w"),
                                                                       SttTerm::var("k4")))))));
  CHECK(stt_alpha_eq(img, expected_box));
}

TEST_CASE("colon operator clause shapes") {
  Context ctx;
  ctx.bind("x", F("p"));
  ctx.bind("z", F("[] p"));
  ctx.bind("w", F("p"));
  SttTermPtr r0 = SttTerm::var("r0");

  // x : r = x r
  CHECK(stt_alpha_eq(colon(Term::var("x"), r0, ctx),
                     SttTerm::app(SttTerm::var("x"), SttTerm::var("r0"))));

  // (bel a = z in w) : r = z (\a. r w||)
  SttTermPtr got = erase(colon(T("bel a = z in w"), r0, ctx));
  SttTermPtr expected = SttTerm::app(
      SttTerm::var("z"),
      SttTerm::lam("a", std::nullopt,
                   SttTerm::app(SttTerm::var("r0"),
                                SttTerm::lam("k", std::nullopt,
                                             SttTerm::app(SttTerm::var("w"), SttTerm::var("k"))))));
  CHECK(stt_alpha_eq(got, expected));

  // modified translation of a variable: \k. x k
  CHECK(stt_alpha_eq(erase(cps_mod(Term::var("x"), ctx)),
                     SttTerm::lam("k", std::nullopt,
                                  SttTerm::app(SttTerm::var("x"), SttTerm::var("k")))));
}

TEST_CASE("simply typed inference and beta-eta normalization") {
  SttContext ctx;
  ctx["x"] = atom("p");
  CHECK(stt_type_equal(stt_infer(ctx, SttTerm::var("x")), atom("p")));
  SttTermPtr id = SttTerm::lam("x", atom("p"), SttTerm::var("x"));
  CHECK(stt_type_equal(stt_infer({}, id), SimpleType::arrow(atom("p"), atom("p"))));
  CHECK_THROWS_AS(stt_infer({}, SttTerm::var("free")), SttError);
  CHECK_THROWS_AS(stt_infer({}, SttTerm::lam("x", std::nullopt, SttTerm::var("x"))), SttError);

  // beta
  SttTermPtr beta = SttTerm::app(id, SttTerm::var("y"));
  CHECK(stt_alpha_eq(stt_normalize_beta_eta(beta, 100), SttTerm::var("y")));
  // eta
  SttTermPtr eta = SttTerm::lam("x", atom("p"),
                                SttTerm::app(SttTerm::var("f"), SttTerm::var("x")));
  CHECK(stt_alpha_eq(stt_normalize_beta_eta(eta, 100), SttTerm::var("f")));
  // no eta when the variable occurs in the function
  SttTermPtr not_eta = SttTerm::lam(
      "x", atom("p"),
      SttTerm::app(SttTerm::app(SttTerm::var("x"), SttTerm::var("x")), SttTerm::var("x")));
  CHECK(stt_alpha_eq(stt_normalize_beta_eta(not_eta, 100), not_eta));

  // the plain and modified images of a variable share their normal form
  Context sctx;
  sctx.bind("z", F("p"));
  SttTermPtr a = stt_normalize_beta_eta(cps(Term::var("z"), sctx), 1000);
  SttTermPtr b = stt_normalize_beta_eta(cps_mod(Term::var("z"), sctx), 1000);
  CHECK(stt_alpha_eq(a, b));
}

TEST_CASE("reachability search finds multi-step reductions") {
  SttTermPtr id = SttTerm::lam("x", atom("p"), SttTerm::var("x"));
  SttTermPtr twice = SttTerm::app(id, SttTerm::app(id, SttTerm::var("y")));
  ReachResult r = stt_reduces_to(twice, SttTerm::var("y"), 10);
  CHECK(r.found);
  CHECK(r.steps == 2);
  CHECK_FALSE(stt_reduces_to(SttTerm::var("y"), twice, 10).found);
  CHECK(stt_reduces_to(twice, twice, 10).found);  // zero steps
}

TEST_CASE("typing preservation for both translations on the axiom terms") {
  for (const char* src :
       {"\\x:p. bel in x", "\\f:[](p -> r). \\a:[] p. bel g = f, u = a in g u",
        "\\x:p. \\y:r. <x, y>", "\\d:p \\/ r. case d of {a => i2[r \\/ p] a | b => i1[r \\/ p] b}"}) {
    TermPtr t = T(src);
    FormulaPtr ty = infer({}, t);
    CAPTURE(src);
    CHECK(stt_type_equal(stt_infer({}, cps(t)), neg_type(ty)));
    CHECK(stt_type_equal(stt_infer({}, cps_mod(t)), neg_type(ty)));
  }
}

TEST_CASE("redex deletion: the plain image reaches the modified image") {
  Rng rng(0xc95u);
  TypedGenConfig cfg;
  cfg.depth = 2;
  cfg.redex_pct = 50;
  for (int i = 0; i < 60; ++i) {
    TypedSample s = gen_typed_term(rng, cfg);
    if (term_size(s.term) > 12) continue;
    SttTermPtr img = cps(s.term, s.ctx);
    SttTermPtr mod = cps_mod(s.term, s.ctx);
    CAPTURE(print_term(s.term));
    ReachResult r = stt_reduces_to(img, mod, 4 * stt_size(img));
    CHECK(r.found);
  }
}

TEST_CASE("detour steps are simulated and permutation steps collapse") {
  Context ctx;
  ctx.bind("d", F("p \\/ r"));
  ctx.bind("s0", F("p -> p"));
  // P1 collapse
  TermPtr perm = T("(case d of {x => s0 | y => s0}) (p1 <a, b>)");
  Context pctx = ctx;
  pctx.bind("a", F("p"));
  pctx.bind("b", F("r"));
  TermPtr after = step(perm, {{}, Rule::P1, -1}, pctx);
  CHECK(stt_alpha_eq(cps_mod(perm, pctx), cps_mod(after, pctx)));

  // D1 simulation with at least one step
  TermPtr beta = T("(\\x:p. bel in x) (p1 <a, b>)");
  Context bctx;
  bctx.bind("a", F("p"));
  bctx.bind("b", F("r"));
  TermPtr bafter = step(beta, {{}, Rule::D1, -1}, bctx);
  SttTermPtr mt = cps_mod(beta, bctx);
  SttTermPtr ms = cps_mod(bafter, bctx);
  ReachResult r = stt_reduces_to(mt, ms, 4 * (stt_size(mt) + stt_size(ms)) + 16);
  CHECK(r.found);
  CHECK(r.steps >= 1);
}

TEST_CASE("the modified translation respects substitution") {
  Context ctx;
  ctx.bind("x", F("p"));
  ctx.bind("c", F("p /\\ r"));
  TermPtr t = T("<x, x>");
  TermPtr s = T("p1 c");
  SttTermPtr lhs = stt_subst(cps_mod(t, ctx), "x", cps_mod(s, ctx));
  SttTermPtr rhs = cps_mod(subst(t, "x", s), ctx);
  ReachResult r = stt_reduces_to(lhs, rhs, 4 * (stt_size(lhs) + stt_size(rhs)) + 16);
  CHECK(r.found);
}

TEST_CASE("the cps layer rejects efq and unit") {
  Context ctx;
  ctx.bind("b", Formula::bot());
  CHECK_THROWS_AS(cps(T("efq[p] b"), ctx), CpsError);
  CHECK_THROWS_AS(cps_mod(T("unit b"), ctx), CpsError);
}
