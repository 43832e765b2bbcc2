#include "doctest.h"

#include "iel/gen.hpp"
#include "iel/parse.hpp"
#include "iel/typing.hpp"

using namespace iel;

namespace {
FormulaPtr F(const char* s) { return parse_formula(s); }
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("inference derives the axiomatic types") {
  Context ctx;
  ctx.bind("x", F("p"));
  CHECK(equal(infer(ctx, Term::var("x")), F("p")));

  CHECK(equal(infer({}, T("\\x:p. bel in x")), F("p -> [] p")));
  CHECK(equal(infer({}, T("\\f:[](p -> r). \\a:[] p. bel g = f, u = a in g u")),
              F("[](p -> r) -> [] p -> [] r")));
  CHECK(equal(infer({}, T("\\x:[] p. x")), F("[] p -> [] p")));
  CHECK_FALSE(check({}, T("\\x:[] p. x"), F("[] p -> p")));
  CHECK(equal(infer(ctx, Term::unit(Term::var("x"))), Formula::top()));
}

TEST_CASE("inference rejects ill-typed terms with located errors") {
  Context ctx;
  ctx.bind("x", F("p"));
  ctx.bind("c", F("p /\\ r"));
  ctx.bind("d", F("p \\/ r"));

  CHECK_THROWS_AS(infer({}, Term::var("nope")), TypeError);
  try {
    infer(ctx, T("x x"));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.path == Path{0});
  }
  try {
    infer(ctx, T("(\\f:p -> r. f) (\\y:r. y)"));
    FAIL("expected a type error");
  } catch (const TypeError& e) {
    CHECK(e.path == Path{1});
    REQUIRE(e.expected);
    CHECK(equal(e.expected, F("p -> r")));
    CHECK(equal(e.found, F("r -> r")));
    CHECK(e.render().find("expected") != std::string::npos);
  }
  CHECK_THROWS_AS(infer(ctx, T("p1 x")), TypeError);
  CHECK_THROWS_AS(infer(ctx, T("case x of {a => a | b => b}")), TypeError);
  CHECK_THROWS_AS(infer(ctx, T("efq[p] x")), TypeError);
  CHECK_THROWS_AS(infer(ctx, T("bel u = x in u")), TypeError);      // argument not boxed
  CHECK_THROWS_AS(infer(ctx, T("case d of {a => a | b => b}")), TypeError);  // branch mismatch
}

TEST_CASE("box binder annotations are checked and resolvable") {
  Context ctx;
  ctx.bind("t", F("[] p"));
  CHECK(equal(infer(ctx, T("bel u = t in u")), F("[] p")));
  CHECK(equal(infer(ctx, T("bel u:p = t in u")), F("[] p")));
  CHECK_THROWS_AS(infer(ctx, T("bel u:r = t in u")), TypeError);

  TermPtr resolved = resolve_annotations(ctx, T("bel u = t in u"));
  REQUIRE(resolved->binders()[0].ann.has_value());
  CHECK(equal(*resolved->binders()[0].ann, F("p")));
  CHECK(alpha_eq(resolved, T("bel u:p = t in u")));
}

TEST_CASE("the box rule shares ambient hypotheses") {
  Context ctx;
  ctx.bind("t", F("[] p"));
  ctx.bind("d", F("r"));
  // the body may refer to d even though d is not boxed
  CHECK(equal(infer(ctx, T("bel u = t in <u, d>")), F("[](p /\\ r)")));
}

TEST_CASE("weakening preserves inferred types") {
  Rng rng(0x11a7u);
  TypedGenConfig cfg;
  cfg.with_bot = true;
  for (int i = 0; i < 150; ++i) {
    TypedSample s = gen_typed_term(rng, cfg);
    Context bigger = s.ctx.extended("fresh_weakening_var", F("p -> p -> p"));
    auto ty = infer_opt(bigger, s.term);
    REQUIRE(ty.has_value());
    CHECK(equal(*ty, s.type));
  }
}

TEST_CASE("the axiom catalogue instantiates and type-checks") {
  std::vector<FormulaPtr> pool = {F("p"), F("r"), F("[] p"), F("p /\\ r")};
  for (const SchemeInfo& s : axiom_catalogue()) {
    for (size_t combo = 0; combo < 8; ++combo) {
      std::vector<FormulaPtr> parts;
      size_t m = combo;
      for (size_t k = 0; k < s.arity; ++k, m /= pool.size())
        parts.push_back(pool[m % pool.size()]);
      FormulaPtr inst = axiom_instance(s.id, parts);
      TermPtr term = ipc_axiom_term(s.id, parts);
      CAPTURE(s.id);
      CHECK(check({}, term, inst));
    }
  }
  CHECK(equal(axiom_instance("then-1", {F("p"), F("r")}), F("p -> r -> p")));
  CHECK(equal(axiom_instance("k-box", {F("p"), F("r")}), F("[](p -> r) -> [] p -> [] r")));
  CHECK(equal(axiom_instance("coreflection", {F("p")}), F("p -> [] p")));
  CHECK_THROWS(axiom_instance("nonsense", {}));
  CHECK_THROWS(axiom_instance("then-1", {F("p")}));  // arity
}

TEST_CASE("Hilbert proofs embed into natural deduction") {
  // single axiom line
  HilbertProof single;
  single.lines.push_back(
      {HilbertLine::Kind::Axiom, nullptr, "coreflection", {F("p")}, 0, 0});
  NdProof nd1 = hilbert_to_nd(single);
  CHECK(check(nd1.hyps, nd1.term, F("p -> [] p")));

  // coreflection at p; hypothesis p; MP
  HilbertProof mp;
  mp.lines.push_back({HilbertLine::Kind::Axiom, nullptr, "coreflection", {F("p")}, 0, 0});
  mp.lines.push_back({HilbertLine::Kind::Hyp, F("p"), "", {}, 0, 0});
  mp.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, 0, 1});
  NdProof nd2 = hilbert_to_nd(mp);
  CHECK(check(nd2.hyps, nd2.term, F("[] p")));
  CHECK(nd2.hyps.size() == 1);

  // chain proving (p -> r) -> [] p -> [] r
  FormulaPtr A = F("p -> r");
  FormulaPtr B = F("[](p -> r)");
  FormulaPtr C = F("[] p -> [] r");
  HilbertProof chain;
  chain.lines.push_back({HilbertLine::Kind::Axiom, nullptr, "then-2", {A, B, C}, 0, 0});
  chain.lines.push_back({HilbertLine::Kind::Axiom, nullptr, "k-box", {F("p"), F("r")}, 0, 0});
  chain.lines.push_back(
      {HilbertLine::Kind::Axiom, nullptr, "then-1", {Formula::impl(B, C), A}, 0, 0});
  chain.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, 2, 1});
  chain.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, 0, 3});
  chain.lines.push_back({HilbertLine::Kind::Axiom, nullptr, "coreflection", {A}, 0, 0});
  chain.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, 4, 5});
  NdProof nd3 = hilbert_to_nd(chain);
  CHECK(check(nd3.hyps, nd3.term, F("(p -> r) -> [] p -> [] r")));

  // malformed reference
  HilbertProof bad;
  bad.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, 0, 1});
  CHECK_THROWS(hilbert_to_nd(bad));
}

TEST_CASE("random Hilbert proofs always type-check at their conclusion") {
  Rng rng(0xcafeu);
  std::vector<FormulaPtr> pool = {F("p"), F("r"), F("p -> r"), F("[] p")};
  for (int round = 0; round < 120; ++round) {
    HilbertProof proof;
    std::vector<FormulaPtr> types;  // formula proven by each line
    int len = 2 + rng.below(6);
    for (int i = 0; i < len; ++i) {
      // try MP between existing lines when possible
      bool made_mp = false;
      if (!types.empty() && rng.chance(50)) {
        for (size_t a = 0; a < types.size() && !made_mp; ++a) {
          if (types[a]->kind() != FKind::Impl) continue;
          for (size_t b = 0; b < types.size() && !made_mp; ++b) {
            if (!equal(types[a]->lhs(), types[b])) continue;
            proof.lines.push_back({HilbertLine::Kind::MP, nullptr, "", {}, a, b});
            types.push_back(types[a]->rhs());
            made_mp = true;
          }
        }
      }
      if (made_mp) continue;
      if (rng.chance(30)) {
        FormulaPtr h = rng.pick(pool);
        proof.lines.push_back({HilbertLine::Kind::Hyp, h, "", {}, 0, 0});
        types.push_back(h);
      } else {
        const SchemeInfo& s = axiom_catalogue()[static_cast<size_t>(
            rng.below(static_cast<int>(axiom_catalogue().size())))];
        std::vector<FormulaPtr> parts;
        for (size_t k = 0; k < s.arity; ++k) parts.push_back(rng.pick(pool));
        proof.lines.push_back({HilbertLine::Kind::Axiom, nullptr, s.id, parts, 0, 0});
        types.push_back(axiom_instance(s.id, parts));
      }
    }
    NdProof nd = hilbert_to_nd(proof);
    CHECK(check(nd.hyps, nd.term, types.back()));
  }
}

TEST_CASE("derivation formulas cover the whole tree") {
  Context ctx;
  ctx.bind("x", F("p /\\ r"));
  auto fs = derivation_formulas(ctx, T("p1 x"));
  REQUIRE(fs.size() == 2);
  CHECK(equal(fs[0], F("p")));
  CHECK(equal(fs[1], F("p /\\ r")));
}
