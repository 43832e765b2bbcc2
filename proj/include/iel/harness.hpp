#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "iel/gen.hpp"

namespace iel {

struct RunOptions {
  bool parallel = true;  // OpenMP over corpus items; the serial path is the reference
  uint64_t seed = 0x1e55eed5u;
  int sample_limit = 5;
};

struct SuiteResult {
  std::string name;
  uint64_t items = 0;     // corpus items processed
  uint64_t checked = 0;   // individual assertions
  uint64_t failures = 0;
  std::vector<std::string> samples;  // up to sample_limit failure descriptions, sorted
  double seconds = 0;
  bool pass() const { return failures == 0; }
  std::string line() const;
};

struct ItemOutcome {
  uint64_t checked = 0;
  uint64_t failures = 0;
  std::string sample;  // description of the first failure in this item
};

// Runs fn over [0, count) either serially or with an OpenMP parallel loop;
// results are identical either way (per-index seeds, order-insensitive
// aggregation, sorted samples).
SuiteResult run_indexed(const std::string& name, uint64_t count, const RunOptions& opts,
                        const std::function<ItemOutcome(uint64_t)>& fn);

// Corpus suites; defaults match the acceptance scale.
SuiteResult degree_lemma_suite(const RunOptions& opts, uint64_t terms = 10000, int max_size = 25);
SuiteResult subject_reduction_suite(const RunOptions& opts, uint64_t terms = 5000);
SuiteResult normalization_suite(const RunOptions& opts, uint64_t terms = 5000);
SuiteResult subformula_suite(const RunOptions& opts, uint64_t terms = 5000);
SuiteResult structure_suite(const RunOptions& opts, uint64_t terms = 3000);
std::vector<SuiteResult> cps_lemma_suite(const RunOptions& opts, uint64_t terms = 2000);
SuiteResult postponement_suite(const RunOptions& opts, uint64_t triples = 1000);
SuiteResult critical_pair_suite();
SuiteResult decide_spot_suite();
SuiteResult decide_oracle_agreement_suite(const RunOptions& opts,
                                          std::vector<std::string> atoms = {"p", "r"},
                                          int max_connectives = 4, int oracle_bound = 12);
std::vector<SuiteResult> metatheory_suite(const RunOptions& opts,
                                          std::vector<std::string> atoms = {"p", "r"},
                                          int max_size = 3);

// The typed corpus shared by the subject-reduction, normalization, subformula
// and structure suites.
TypedSample corpus_typed_sample(uint64_t seed, uint64_t index, bool with_bot, bool closed);

std::vector<SuiteResult> selftest_lemmas(const RunOptions& opts);
std::vector<SuiteResult> selftest_metatheory(const RunOptions& opts);
std::vector<SuiteResult> selftest_all(const RunOptions& opts);

}  // namespace iel
