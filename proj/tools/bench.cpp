// Compares the serial reference corpus runner against the OpenMP one on the
// main verification workloads and reports the speedup.

#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "iel/harness.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

struct BenchRow {
  std::string name;
  double serial = 0, parallel = 0;
  uint64_t checks = 0;
  bool agree = true;
};

BenchRow run_pair(const std::string& name,
                  const std::function<iel::SuiteResult(const iel::RunOptions&)>& suite,
                  uint64_t seed) {
  iel::RunOptions serial_opts{false, seed};
  iel::RunOptions parallel_opts{true, seed};
  iel::SuiteResult s = suite(serial_opts);
  iel::SuiteResult p = suite(parallel_opts);
  BenchRow row;
  row.name = name;
  row.serial = s.seconds;
  row.parallel = p.seconds;
  row.checks = s.checked;
  row.agree = s.checked == p.checked && s.failures == p.failures && s.samples == p.samples;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ielkit-bench - serial vs OpenMP corpus throughput"};
  uint64_t seed = 0x1e55eed5u;
  uint64_t degree_terms = 10000, sr_terms = 3000, cps_terms = 800;
  int agreement_size = 3;
  app.add_option("--seed", seed, "corpus seed");
  app.add_option("--degree-terms", degree_terms, "degree corpus size");
  app.add_option("--sr-terms", sr_terms, "subject reduction corpus size");
  app.add_option("--cps-terms", cps_terms, "cps corpus size");
  app.add_option("--agreement-size", agreement_size, "max connectives for decide-vs-oracle");
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both columns run serially\n");
#endif

  std::vector<BenchRow> rows;
  rows.push_back(run_pair(
      "degree-lemmas",
      [&](const iel::RunOptions& o) { return iel::degree_lemma_suite(o, degree_terms); }, seed));
  rows.push_back(run_pair(
      "subject-reduction",
      [&](const iel::RunOptions& o) { return iel::subject_reduction_suite(o, sr_terms); }, seed));
  rows.push_back(run_pair(
      "cps-redex-deletion",
      [&](const iel::RunOptions& o) { return iel::cps_lemma_suite(o, cps_terms)[1]; }, seed));
  rows.push_back(run_pair(
      "metatheory-disjunction",
      [&](const iel::RunOptions& o) {
        return iel::metatheory_suite(o, {"p", "r"}, 3)[0];
      },
      seed));
  rows.push_back(run_pair(
      "decide-oracle-agreement",
      [&](const iel::RunOptions& o) {
        return iel::decide_oracle_agreement_suite(o, {"p", "r"}, agreement_size);
      },
      seed));

  std::printf("%-26s %12s %12s %9s %9s %7s\n", "workload", "serial (s)", "openmp (s)", "speedup",
              "checks", "agree");
  bool all_agree = true;
  for (const auto& r : rows) {
    all_agree = all_agree && r.agree;
    std::printf("%-26s %12.3f %12.3f %8.2fx %9llu %7s\n", r.name.c_str(), r.serial, r.parallel,
                r.parallel > 0 ? r.serial / r.parallel : 0.0,
                static_cast<unsigned long long>(r.checks), r.agree ? "yes" : "NO");
  }
  if (!all_agree) {
    std::printf("serial and parallel runs disagree\n");
    return 1;
  }
  return 0;
}
