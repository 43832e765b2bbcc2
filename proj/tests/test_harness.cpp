#include "doctest.h"

#include "iel/harness.hpp"

using namespace iel;

namespace {

bool same_result(const SuiteResult& a, const SuiteResult& b) {
  return a.checked == b.checked && a.failures == b.failures && a.items == b.items &&
         a.samples == b.samples;
}

}  // namespace

TEST_CASE("serial and parallel corpus runs agree") {
  RunOptions serial{false, 0x7777u};
  RunOptions parallel{true, 0x7777u};
  CHECK(same_result(degree_lemma_suite(serial, 250), degree_lemma_suite(parallel, 250)));
  CHECK(same_result(subject_reduction_suite(serial, 120), subject_reduction_suite(parallel, 120)));
  CHECK(same_result(normalization_suite(serial, 120), normalization_suite(parallel, 120)));
}

TEST_CASE("small-scale suites pass") {
  RunOptions opts{true, 0xabcdu};
  CHECK(degree_lemma_suite(opts, 300).pass());
  CHECK(subject_reduction_suite(opts, 150).pass());
  CHECK(normalization_suite(opts, 150).pass());
  CHECK(subformula_suite(opts, 150).pass());
  CHECK(structure_suite(opts, 100).pass());
  for (const auto& r : cps_lemma_suite(opts, 60)) {
    CAPTURE(r.name);
    for (const auto& s : r.samples) CAPTURE(s);
    CHECK(r.pass());
  }
  SuiteResult post = postponement_suite(opts, 40);
  for (const auto& s : post.samples) CAPTURE(s);
  CHECK(post.pass());
  CHECK(critical_pair_suite().pass());
  CHECK(decide_spot_suite().pass());
  for (const auto& r : metatheory_suite(opts, {"p", "r"}, 2)) CHECK(r.pass());
  SuiteResult agree = decide_oracle_agreement_suite(opts, {"p", "r"}, 2);
  for (const auto& s : agree.samples) CAPTURE(s);
  CHECK(agree.pass());
}

TEST_CASE("corpus generation is deterministic per index") {
  TypedSample a = corpus_typed_sample(42, 7, true, false);
  TypedSample b = corpus_typed_sample(42, 7, true, false);
  CHECK(alpha_eq(a.term, b.term));
  CHECK(equal(a.type, b.type));
  TypedSample c = corpus_typed_sample(42, 8, true, false);
  CHECK_FALSE(alpha_eq(a.term, c.term));  // overwhelmingly likely distinct
}
