#include "doctest.h"

#include "iel/degree.hpp"
#include "iel/gen.hpp"
#include "iel/parse.hpp"
#include "iel/rewrite.hpp"

using namespace iel;

namespace {
TermPtr T(const char* s) { return parse_term(s); }
}  // namespace

TEST_CASE("degree base clauses") {
  CHECK(bar_norm(Term::var("x")) == 1);
  CHECK(hash_norm(Term::var("x")) == 1);
  CHECK(bar_norm(T("x y")) == 2);
  CHECK(hash_norm(T("<t, s>")) == 1);
  CHECK(hash_norm(T("\\x:p. x y")) == 1);
}

TEST_CASE("degree on case and projection") {
  TermPtr c = T("case z of {x => u | y => v}");
  CHECK(bar_norm(c) == 3);
  CHECK(hash_norm(c) == 4);
  TermPtr pc = T("p1 (case z of {x => u | y => v})");
  CHECK(bar_norm(pc) == 7);
  CHECK(hash_norm(pc) == 4);
}

TEST_CASE("degree on boxes, products over the arguments") {
  CHECK(hash_norm(T("bel u = a in u")) == 1);
  CHECK(bar_norm(T("bel in x")) == 1 + 1);  // |s| * empty product + empty product = 1 + 1
  TermPtr b = T("bel u = (x y), v = (case z of {a => b | c => d}) in <u, v>");
  // |s|=2, |args| = 2 and 3, # args = 1 and 4
  CHECK(bar_norm(b) == 2 * (2 * 3) + (1 * 4));
  CHECK(hash_norm(b) == 1 * (1 * 4));
}

TEST_CASE("degree rejects efq and unit") {
  CHECK_THROWS_AS(bar_norm(T("efq[p] x")), DegreeError);
  CHECK_THROWS_AS(hash_norm(T("unit x")), DegreeError);
}

TEST_CASE("alpha renaming leaves both norms unchanged") {
  TermPtr a = T("\\x:p. case x of {u => <u, x> | v => v}");
  TermPtr b = T("\\y:p. case y of {w => <w, y> | z => z}");
  CHECK(bar_norm(a) == bar_norm(b));
  CHECK(hash_norm(a) == hash_norm(b));
}

TEST_CASE("hash invariance and bar decrease on a small corpus") {
  Rng rng(0xde6u);
  int steps_checked = 0;
  for (int i = 0; i < 400; ++i) {
    TermPtr t = gen_untyped_term(rng, 22);
    DegreeReport before = degree(t);
    for (const Redex& r : redexes(t, Family::P)) {
      TermPtr s = step(t, r);
      DegreeReport after = degree(s);
      CAPTURE(print_term(t));
      CAPTURE(rule_name(r.rule));
      CHECK(after.hash == before.hash);
      CHECK(after.bar < before.bar);
      ++steps_checked;
    }
  }
  CHECK(steps_checked > 300);  // the corpus is permutation-redex rich
}
