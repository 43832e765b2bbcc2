#include "doctest.h"

#include "json.hpp"

#include "iel/gen.hpp"
#include "iel/parse.hpp"
#include "iel/rewrite.hpp"

using namespace iel;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("redex detection matches the rule table") {
  auto rs = redexes(T("(\\x:p. x) y"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::D1);
  CHECK(rs[0].path.empty());

  rs = redexes(T("bel u:p = t in u"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::D5);

  rs = redexes(T("p1 (case s of {x => a | y => b})"));
  REQUIRE(rs.size() == 1);
  CHECK(rs[0].rule == Rule::P2);

  rs = redexes(T("bel u = (bel in a), v = (case s of {x => b | y => c}), w = efq[[] p] z in d"));
  REQUIRE(rs.size() == 3);
  CHECK(rs[0].rule == Rule::B5);  // bottom family first at the same position
  CHECK(rs[0].arg == 2);
  CHECK(rs[1].rule == Rule::P4);
  CHECK(rs[1].arg == 1);
  CHECK(rs[2].rule == Rule::D4);
  CHECK(rs[2].arg == 0);

  CHECK(redexes(Term::var("x")).empty());
  CHECK(redexes(T("\\x:p. x")).empty());
}

TEST_CASE("single steps produce the expected contracta") {
  CHECK(alpha_eq(step(T("(\\x:p. x) y"), {{}, Rule::D1, -1}), Term::var("y")));
  CHECK(alpha_eq(step(T("p2 <a, b>"), {{}, Rule::D2, -1}), Term::var("b")));
  CHECK(alpha_eq(step(T("case i1[p \\/ r] a of {x => x | y => y}"), {{}, Rule::D3, -1}),
                 Term::var("a")));
  CHECK(alpha_eq(step(T("bel u:p = t in u"), {{}, Rule::D5, -1}), Term::var("t")));

  // box merge, read at n = 1
  TermPtr d4 = T("bel u:p = (bel w:r = t in s1) in <u, u>");
  TermPtr merged = step(d4, {{}, Rule::D4, 0});
  CHECK(alpha_eq(merged, T("bel w:r = t in <s1, s1>")));

  // the permutations
  CHECK(alpha_eq(step(T("(case s of {x => f | y => g}) a"), {{}, Rule::P1, -1}),
                 T("case s of {x => f a | y => g a}")));
  CHECK(alpha_eq(step(T("p1 (case s of {x => a | y => b})"), {{}, Rule::P2, -1}),
                 T("case s of {x => p1 a | y => p1 b}")));
  CHECK(alpha_eq(
      step(T("case (case s of {x => a | y => b}) of {u => c | v => d}"), {{}, Rule::P3, -1}),
      T("case s of {x => case a of {u => c | v => d} | y => case b of {u => c | v => d}}")));
  CHECK(alpha_eq(step(T("bel u:p = (case s of {x => a | y => b}) in s0"), {{}, Rule::P4, 0}),
                 T("case s of {x => bel u:p = a in s0 | y => bel u:p = b in s0}")));
  CHECK(alpha_eq(step(T("efq[p](case s of {x => a | y => b})"), {{}, Rule::PBot, -1}),
                 T("case s of {x => efq[p] a | y => efq[p] b}")));

  // bottom conversions rewrite the annotation
  CHECK(alpha_eq(step(T("efq[p -> r] t s"), {{}, Rule::B1, -1}), T("efq[r] t")));
  CHECK(alpha_eq(step(T("p1 (efq[p /\\ r] t)"), {{}, Rule::B2, -1}), T("efq[p] t")));
  CHECK(alpha_eq(step(T("efq[p](efq[bot] t)"), {{}, Rule::B4, -1}), T("efq[p] t")));
  CHECK(alpha_eq(step(T("case efq[p \\/ r] t of {x => x x | y => y y}"), {{}, Rule::B3, -1}),
                 T("efq[p \\/ r] t")));  // untypeable: annotation kept

  // with a context the B3/B5 annotations are re-inferred
  Context ctx;
  ctx.bind("b", Formula::bot());
  ctx.bind("z", F("r"));
  TermPtr b3 = T("case efq[p \\/ p] b of {x => z | y => z}");
  CHECK(alpha_eq(step(b3, {{}, Rule::B3, -1}, ctx), T("efq[r] b")));
  TermPtr b5 = T("bel u:p = efq[[] p] b in <u, z>");
  CHECK(alpha_eq(step(b5, {{}, Rule::B5, 0}, ctx), T("efq[[](p /\\ r)] b")));

  CHECK_THROWS_AS(step(T("x y"), {{}, Rule::D1, -1}), RewriteError);
  CHECK_THROWS(step(T("x"), {{3}, Rule::D1, -1}));
}

TEST_CASE("permutation steps avoid variable capture") {
  // the case binder x collides with the free x of the argument
  TermPtr t = T("(case s of {x => f | y => g}) x");
  TermPtr r = step(t, {{}, Rule::P1, -1});
  CHECK(alpha_eq(r, T("case s of {w => f x | v => g x}")));

  TermPtr t3 = T("case (case s of {x => a | y => b}) of {u => x | v => y}");
  TermPtr r3 = step(t3, {{}, Rule::P3, -1});
  CHECK(alpha_eq(
      r3, T("case s of {x2 => case a of {u => x | v => y} | y2 => case b of {u => x | v => y}}")));

  // the inner box binder collides with a free variable of the outer body
  TermPtr d4 = T("bel u:p = (bel w:r = t in s1) in <u, w>");
  TermPtr m = step(d4, {{}, Rule::D4, 0});
  CHECK(alpha_eq(m, T("bel w2:r = t in <s1, w>")));
  CHECK(free_vars(m).count("w") == 1);

  // the case binder collides with the box body's free variable
  TermPtr p4 = T("bel u:p = (case s of {x => a | y => b}) in <u, x>");
  TermPtr rp4 = step(p4, {{}, Rule::P4, 0});
  CHECK(alpha_eq(rp4,
                 T("case s of {x2 => bel u:p = a in <u, x> | y2 => bel u:p = b in <u, x>}")));
}

TEST_CASE("step_relation collects distinct successors") {
  CHECK(step_relation(Term::var("x"), Family::All).empty());
  CHECK(step_relation(T("(\\x:p. x) (p1 <a, b>)"), Family::D).size() == 2);

  // the displayed critical pair source has exactly two successors
  TermPtr source = T("bel z:c = efq[[] c](case t1 of {x => t2 | y => t3}) in s1");
  auto succ = step_relation(source, Family::All);
  CHECK(succ.size() == 2);
  CHECK(step_relation(source, Family::Bot).size() == 1);
  CHECK(step_relation(source, Family::P).size() == 1);
}

TEST_CASE("normalization follows the declared strategies") {
  Trace t0 = normalize(T("\\x:p. bel in x"), Strategy::LeftmostOutermost, 100);
  CHECK(t0.steps.empty());
  CHECK(alpha_eq(t0.result, T("\\x:p. bel in x")));

  Trace t1 = normalize(T("(\\x:p. bel in x) y"), Strategy::LeftmostOutermost, 100);
  REQUIRE(t1.steps.size() == 1);
  CHECK(t1.steps[0].rule == Rule::D1);
  CHECK(alpha_eq(t1.result, T("bel in y")));

  TermPtr nested = T("bel u:p = (bel w:r = t in s1) in <u, u>");
  Trace t2 = normalize(nested, Strategy::LeftmostOutermost, 100);
  CHECK(alpha_eq(t2.result, T("bel w:r = t in <s1, s1>")));

  // bottom family has priority over P and D at the same position
  TermPtr mixed = T("bel a = (bel in x), b = (case s of {u => y | v => z}), c = efq[[] p] w in d");
  Trace t3 = normalize(mixed, Strategy::LeftmostOutermost, 100);
  REQUIRE(!t3.steps.empty());
  CHECK(t3.steps[0].rule == Rule::B5);

  CHECK_THROWS_AS(normalize(T("(\\x:p. x) y"), Strategy::LeftmostOutermost, 0), FuelExhausted);

  // leftmost-innermost contracts the inner redex first
  TermPtr two = T("(\\x:p. x) (p1 <a, b>)");
  Trace li = normalize(two, Strategy::LeftmostInnermost, 100);
  REQUIRE(li.steps.size() == 2);
  CHECK(li.steps[0].rule == Rule::D2);
  Trace lo = normalize(two, Strategy::LeftmostOutermost, 100);
  CHECK(lo.steps[0].rule == Rule::D1);
  CHECK(alpha_eq(li.result, lo.result));
}

TEST_CASE("normal form predicates") {
  CHECK(is_normal(Term::var("x")));
  CHECK_FALSE(is_normal(T("(\\x:p. x) y")));
  CHECK_FALSE(is_normal(T("p1 (case s of {x => a | y => b})")));

  CHECK(is_neutral(Term::var("x")));
  CHECK(is_neutral(T("p1 t")));
  CHECK(is_neutral(T("case s of {x => a | y => b}")));
  CHECK(is_neutral(T("efq[p] t")));
  CHECK_FALSE(is_neutral(T("\\x:p. x")));
  CHECK_FALSE(is_neutral(T("bel in x")));

  CHECK(last_rule(T("<a, b>")) == NdRule::AndIntro);
  CHECK(last_rule(T("bel in x")) == NdRule::BoxIntro);
  CHECK(last_rule(T("f a")) == NdRule::ImplElim);
  CHECK(is_intro_of(NdRule::BoxIntro, F("[] p")));
  CHECK_FALSE(is_intro_of(NdRule::AndIntro, F("[] p")));
}

TEST_CASE("subformula property check on hand derivations") {
  CHECK(check_subformula_property({}, T("\\x:p. bel in x"), F("p -> [] p")));
  Context ctx;
  ctx.bind("x", F("p /\\ r"));
  CHECK(check_subformula_property(ctx, T("p1 x"), F("p")));
  CHECK_THROWS_AS(check_subformula_property({}, T("(\\x:p. x) y"), F("p")), RewriteError);
}

TEST_CASE("trace JSON carries rule, path and terms") {
  Trace tr = normalize(T("(\\x:p. x) (p1 <a, b>)"), Strategy::LeftmostOutermost, 100);
  auto j = nlohmann::json::parse(trace_to_json(tr));
  CHECK(j["start"].is_string());
  CHECK(j["result"].is_string());
  REQUIRE(j["steps"].is_array());
  CHECK(j["steps"][0]["rule"] == "D1");
  CHECK(j["steps"][0]["path"].is_array());
  // the reported term strings reparse
  CHECK(alpha_eq(parse_term(j["result"].get<std::string>()), tr.result));
}

TEST_CASE("subject reduction holds on a small random corpus") {
  Rng rng(0x50bu);
  TypedGenConfig cfg;
  cfg.with_bot = true;
  cfg.redex_pct = 60;
  for (int i = 0; i < 150; ++i) {
    TypedSample s = gen_typed_term(rng, cfg);
    for (const Redex& r : redexes(s.term, Family::All)) {
      TermPtr next = step(s.term, r, s.ctx);
      auto ty = infer_opt(s.ctx, next);
      CAPTURE(print_term(s.term));
      CAPTURE(rule_name(r.rule));
      REQUIRE(ty.has_value());
      CHECK(equal(*ty, s.type));
    }
  }
}
