#include "iel/harness.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <sstream>
#include <unordered_set>

#include "iel/cps.hpp"
#include "iel/decide.hpp"
#include "iel/degree.hpp"
#include "iel/rewrite.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iel {

namespace {

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

std::string SuiteResult::line() const {
  std::ostringstream os;
  os << name << ": " << (pass() ? "PASS" : "FAIL") << " (items=" << items
     << " checks=" << checked << " failures=" << failures << ", "
     << std::fixed << seconds << "s)";
  for (const auto& s : samples) os << "\n    " << s;
  return os.str();
}

SuiteResult run_indexed(const std::string& name, uint64_t count, const RunOptions& opts,
                        const std::function<ItemOutcome(uint64_t)>& fn) {
  SuiteResult res;
  res.name = name;
  res.items = count;
  double t0 = now_seconds();
  uint64_t checked = 0, failures = 0;
  std::vector<std::string> samples;
  auto run_one = [&fn](uint64_t i) -> ItemOutcome {
    try {
      return fn(i);
    } catch (const std::exception& e) {
      return {0, 1, std::string("item ") + std::to_string(i) + " raised: " + e.what()};
    }
  };
#ifdef _OPENMP
  if (opts.parallel) {
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : checked, failures)
    for (int64_t i = 0; i < static_cast<int64_t>(count); ++i) {
      ItemOutcome o = run_one(static_cast<uint64_t>(i));
      checked += o.checked;
      failures += o.failures;
      if (o.failures && !o.sample.empty()) {
#pragma omp critical
        if (samples.size() < 32) samples.push_back(o.sample);
      }
    }
  } else
#endif
  {
    for (uint64_t i = 0; i < count; ++i) {
      ItemOutcome o = run_one(i);
      checked += o.checked;
      failures += o.failures;
      if (o.failures && !o.sample.empty() && samples.size() < 32) samples.push_back(o.sample);
    }
  }
  std::sort(samples.begin(), samples.end());
  if (samples.size() > static_cast<size_t>(opts.sample_limit))
    samples.resize(static_cast<size_t>(opts.sample_limit));
  res.checked = checked;
  res.failures = failures;
  res.samples = std::move(samples);
  res.seconds = now_seconds() - t0;
  return res;
}

// -- corpora -------------------------------------------------------------

namespace {

constexpr uint64_t kUntypedTag = 0xdeffu;
constexpr uint64_t kTypedTag = 0x7e9du;
constexpr uint64_t kClosedTag = 0xc105u;
constexpr uint64_t kCpsTag = 0xc925u;
constexpr uint64_t kPostTag = 0x9057u;

TermPtr untyped_corpus_term(uint64_t seed, uint64_t index, int max_size) {
  Rng rng(mix_seed(seed ^ kUntypedTag, index));
  for (int budget = max_size;; budget = std::max(2, budget - 4)) {
    TermPtr t = gen_untyped_term(rng, budget);
    if (term_size(t) <= max_size) return t;
  }
}

TypedSample sized_typed_sample(Rng& rng, TypedGenConfig cfg, int size_cap) {
  for (int depth = cfg.depth;; --depth) {
    cfg.depth = std::max(1, depth);
    TypedSample s = gen_typed_term(rng, cfg);
    if (term_size(s.term) <= size_cap || depth <= 1) return s;
  }
}

}  // namespace

TypedSample corpus_typed_sample(uint64_t seed, uint64_t index, bool with_bot, bool closed) {
  Rng rng(mix_seed(seed ^ (closed ? kClosedTag : kTypedTag), index));
  TypedGenConfig cfg;
  cfg.depth = 3 + static_cast<int>(index % 3);
  cfg.with_bot = with_bot;
  cfg.closed = closed;
  cfg.redex_pct = 50;
  return sized_typed_sample(rng, cfg, 40);
}

// -- suites ----------------------------------------------------------------

SuiteResult degree_lemma_suite(const RunOptions& opts, uint64_t terms, int max_size) {
  return run_indexed("degree-lemmas", terms, opts, [&, max_size](uint64_t i) {
    ItemOutcome out;
    TermPtr t = untyped_corpus_term(opts.seed, i, max_size);
    DegreeReport before = degree(t);
    for (const Redex& r : redexes(t, Family::P)) {
      TermPtr s = step(t, r);
      DegreeReport after = degree(s);
      out.checked += 2;
      if (after.hash != before.hash) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = "hash not invariant under " + std::string(rule_name(r.rule)) + ": " +
                       print_term(t);
      }
      if (after.bar >= before.bar) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = "bar not decreasing under " + std::string(rule_name(r.rule)) + ": " +
                       print_term(t);
      }
    }
    return out;
  });
}

SuiteResult subject_reduction_suite(const RunOptions& opts, uint64_t terms) {
  return run_indexed("subject-reduction", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = corpus_typed_sample(opts.seed, i, i % 2 == 0, false);
    for (const Redex& r : redexes(s.term, Family::All)) {
      TermPtr next = step(s.term, r, s.ctx);
      ++out.checked;
      auto ty = infer_opt(s.ctx, next);
      if (!ty || !equal(*ty, s.type)) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = std::string("type not preserved by ") + rule_name(r.rule) + ": " +
                       print_term(s.term) + " : " + print_formula(s.type);
      }
    }
    return out;
  });
}

SuiteResult normalization_suite(const RunOptions& opts, uint64_t terms) {
  return run_indexed("strong-normalization", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = corpus_typed_sample(opts.seed, i, i % 2 == 0, false);
    uint64_t fuel = default_fuel(s.term);
    out.checked += 3;
    try {
      Trace lo = normalize(s.term, Strategy::LeftmostOutermost, fuel, s.ctx);
      Trace li = normalize(s.term, Strategy::LeftmostInnermost, fuel, s.ctx);
      Trace lo2 = normalize(s.term, Strategy::LeftmostOutermost, fuel, s.ctx);
      if (!is_normal(lo.result) || !is_normal(li.result)) {
        ++out.failures;
        out.sample = "normalize returned a non-normal result: " + print_term(s.term);
      }
      if (trace_to_json(lo) != trace_to_json(lo2)) {
        ++out.failures;
        out.sample = "default strategy trace not deterministic: " + print_term(s.term);
      }
    } catch (const FuelExhausted&) {
      ++out.failures;
      out.sample = "fuel exhausted: " + print_term(s.term);
    }
    return out;
  });
}

SuiteResult subformula_suite(const RunOptions& opts, uint64_t terms) {
  return run_indexed("subformula-property", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = corpus_typed_sample(opts.seed, i, i % 2 == 0, false);
    Trace tr = normalize(s.term, Strategy::LeftmostOutermost, default_fuel(s.term), s.ctx);
    ++out.checked;
    if (!check_subformula_property(s.ctx, tr.result, s.type)) {
      ++out.failures;
      out.sample = "subformula property failed for normal form of " + print_term(s.term) +
                   " : " + print_formula(s.type);
    }
    return out;
  });
}

SuiteResult structure_suite(const RunOptions& opts, uint64_t terms) {
  return run_indexed("canonicity-neutrality", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    if (i == 0) {
      ++out.checked;
      if (decide({}, Formula::bot())) {
        ++out.failures;
        out.sample = "decide proves bottom";
      }
    }
    TypedSample s = corpus_typed_sample(opts.seed, i, false, true);
    Trace tr = normalize(s.term, Strategy::LeftmostOutermost, default_fuel(s.term), s.ctx);
    out.checked += 2;
    if (!is_intro_of(last_rule(tr.result), s.type)) {
      ++out.failures;
      out.sample = "closed normal form does not end in an introduction: " +
                   print_term(tr.result) + " : " + print_formula(s.type);
    }
    if (is_neutral(tr.result)) {
      ++out.failures;
      if (out.sample.empty())
        out.sample = "closed normal form is neutral: " + print_term(tr.result);
    }
    return out;
  });
}

namespace {

TypedSample cps_corpus_sample(uint64_t seed, uint64_t index) {
  Rng rng(mix_seed(seed ^ kCpsTag, index));
  TypedGenConfig cfg;
  cfg.depth = 2 + static_cast<int>(index % 2);
  cfg.with_bot = false;
  cfg.redex_pct = 55;
  cfg.goal_size = 2;
  return sized_typed_sample(rng, cfg, 14);
}

}  // namespace

std::vector<SuiteResult> cps_lemma_suite(const RunOptions& opts, uint64_t terms) {
  SuiteResult typing = run_indexed("cps-typing-preservation", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = cps_corpus_sample(opts.seed, i);
    SttContext sctx = translate_context(s.ctx);
    SimpleTypePtr want = neg_type(s.type);
    out.checked += 2;
    try {
      if (!stt_type_equal(stt_infer(sctx, cps(s.term, s.ctx)), want)) {
        ++out.failures;
        out.sample = "cps image type mismatch: " + print_term(s.term);
      }
      if (!stt_type_equal(stt_infer(sctx, cps_mod(s.term, s.ctx)), want)) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = "modified cps image type mismatch: " + print_term(s.term);
      }
    } catch (const SttError& e) {
      ++out.failures;
      out.sample = std::string("stt inference failed: ") + e.what() + " on " + print_term(s.term);
    }
    return out;
  });

  SuiteResult redex = run_indexed("cps-redex-deletion", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = cps_corpus_sample(opts.seed, i);
    SttTermPtr img = cps(s.term, s.ctx);
    SttTermPtr mod = cps_mod(s.term, s.ctx);
    ++out.checked;
    ReachResult r = stt_reduces_to(img, mod, 4 * stt_size(img));
    if (!r.found) {
      ++out.failures;
      out.sample = std::string("cps image does not reach the modified image") +
                   (r.capped ? " (search capped)" : "") + ": " + print_term(s.term);
    }
    return out;
  });

  SuiteResult simulation = run_indexed("cps-detour-simulation", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = cps_corpus_sample(opts.seed, i);
    SttTermPtr mt = cps_mod(s.term, s.ctx);
    for (const Redex& r : redexes(s.term, Family::D)) {
      TermPtr next = step(s.term, r, s.ctx);
      SttTermPtr ms = cps_mod(next, s.ctx);
      ++out.checked;
      int bound = 4 * (stt_size(mt) + stt_size(ms)) + 16;
      ReachResult reach = stt_reduces_to(mt, ms, bound);
      if (!reach.found || reach.steps < 1) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = std::string("detour step not simulated (") + rule_name(r.rule) +
                       (reach.capped ? ", search capped" : "") + "): " + print_term(s.term);
      }
    }
    return out;
  });

  SuiteResult collapse = run_indexed("cps-permutation-collapse", terms, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = cps_corpus_sample(opts.seed, i);
    SttTermPtr mt = cps_mod(s.term, s.ctx);
    for (const Redex& r : redexes(s.term, Family::P)) {
      TermPtr next = step(s.term, r, s.ctx);
      ++out.checked;
      if (!stt_alpha_eq(mt, cps_mod(next, s.ctx))) {
        ++out.failures;
        if (out.sample.empty())
          out.sample = std::string("permutation step changed the modified image (") +
                       rule_name(r.rule) + "): " + print_term(s.term);
      }
    }
    return out;
  });

  SuiteResult substitution = run_indexed("cps-substitution", terms / 2, opts, [&](uint64_t i) {
    ItemOutcome out;
    TypedSample s = cps_corpus_sample(opts.seed, i);
    Rng rng(mix_seed(opts.seed ^ kCpsTag ^ 0xabcdu, i));
    TypedGenConfig cfg;
    cfg.depth = 2;
    cfg.redex_pct = 30;
    for (const auto& [name, f] : s.ctx.bindings()) {
      auto repl = gen_term_for_goal(rng, cfg, s.ctx, f);
      if (!repl) continue;
      if (term_size(*repl) > 10) continue;
      SttTermPtr lhs = stt_subst(cps_mod(s.term, s.ctx), name, cps_mod(*repl, s.ctx));
      SttTermPtr rhs = cps_mod(subst(s.term, name, *repl), s.ctx);
      ++out.checked;
      int bound = 4 * (stt_size(lhs) + stt_size(rhs)) + 16;
      ReachResult reach = stt_reduces_to(lhs, rhs, bound);
      if (!reach.found) {
        ++out.failures;
        out.sample = "substitution lemma failed on " + print_term(s.term) + " [" + name + "]";
      }
      break;  // one hypothesis per item keeps the suite cheap
    }
    // Also: applying the plain image to a continuation reaches the colon form.
    SttTermPtr r0 = SttTerm::var("r0");
    SttTermPtr applied = SttTerm::app(cps(s.term, s.ctx), r0);
    SttTermPtr col = colon(s.term, r0, s.ctx);
    ++out.checked;
    ReachResult reach = stt_reduces_to(applied, col, 4 * stt_size(applied) + 8);
    if (!reach.found) {
      ++out.failures;
      if (out.sample.empty()) out.sample = "applied image misses colon form: " + print_term(s.term);
    }
    return out;
  });

  return {typing, redex, simulation, collapse, substitution};
}

// -- postponement ------------------------------------------------------------

namespace {

// Target reachable from k through bottom conversions only (sizes shrink).
bool bot_reaches(const TermPtr& k, const TermPtr& target, const Context& ctx) {
  std::string tkey = canonical_key(target);
  int tsize = term_size(target);
  std::deque<TermPtr> queue{k};
  std::unordered_set<std::string> seen{canonical_key(k)};
  while (!queue.empty()) {
    TermPtr u = queue.front();
    queue.pop_front();
    if (canonical_key(u) == tkey) return true;
    if (term_size(u) <= tsize) continue;
    for (const TermPtr& v : step_relation(u, Family::Bot, ctx))
      if (seen.insert(canonical_key(v)).second) queue.push_back(v);
  }
  return false;
}

bool postponement_joins(const Context& ctx, const TermPtr& r0, const TermPtr& target,
                        Family family, int max_depth = 4, size_t cap = 20000) {
  std::vector<TermPtr> frontier{r0};
  std::unordered_set<std::string> seen{canonical_key(r0)};
  for (int depth = 1; depth <= max_depth; ++depth) {
    std::vector<TermPtr> next;
    for (const TermPtr& u : frontier) {
      for (const TermPtr& v : step_relation(u, family, ctx)) {
        if (!seen.insert(canonical_key(v)).second) continue;
        if (bot_reaches(v, target, ctx)) return true;
        next.push_back(v);
        if (seen.size() > cap) return false;
      }
    }
    frontier = std::move(next);
  }
  return false;
}

}  // namespace

SuiteResult postponement_suite(const RunOptions& opts, uint64_t triples) {
  return run_indexed("bottom-postponement", triples, opts, [&](uint64_t i) {
    ItemOutcome out;
    for (int attempt = 0; attempt < 64; ++attempt) {
      Rng rng(mix_seed(opts.seed ^ kPostTag, i * 64 + static_cast<uint64_t>(attempt)));
      TypedGenConfig cfg;
      cfg.depth = 2 + static_cast<int>((i + attempt) % 2);
      cfg.with_bot = true;
      cfg.redex_pct = 65;
      TypedSample s = sized_typed_sample(rng, cfg, 18);
      std::vector<Redex> bots = redexes(s.term, Family::Bot);
      if (bots.empty()) continue;
      int collected = 0;
      for (const Redex& br : bots) {
        TermPtr mid = step(s.term, br, s.ctx);
        for (Family fam : {Family::D, Family::P}) {
          for (const Redex& rr : redexes(mid, fam)) {
            TermPtr target = step(mid, rr, s.ctx);
            ++out.checked;
            if (!postponement_joins(s.ctx, s.term, target, fam)) {
              ++out.failures;
              if (out.sample.empty())
                out.sample = std::string("no rejoin for ") + rule_name(br.rule) + " then " +
                             rule_name(rr.rule) + ": " + print_term(s.term);
            }
            if (++collected >= 3) break;
          }
          if (collected >= 3) break;
        }
        if (collected >= 3) break;
      }
      if (collected > 0) return out;
    }
    ++out.failures;
    out.sample = "generator produced no bottom/R triple for item " + std::to_string(i);
    return out;
  });
}

SuiteResult critical_pair_suite() {
  SuiteResult res;
  res.name = "critical-pair";
  res.items = 1;
  double t0 = now_seconds();
  auto fail = [&](const std::string& msg) {
    ++res.failures;
    if (res.samples.size() < 5) res.samples.push_back(msg);
  };
  FormulaPtr c = Formula::atom("c");
  FormulaPtr boxc = Formula::box(c);
  // B_z(E(C_{x,y}(t1, t2, t3))) in s1
  TermPtr inner_case =
      Term::case_of(Term::var("t1"), "x", Term::var("t2"), "y", Term::var("t3"));
  TermPtr efq = Term::efq(boxc, inner_case);
  TermPtr r = Term::box({{"z", c}}, {efq}, Term::var("s1"));

  // Exactly two one-step successors: the bottom collapse and the permutation.
  std::vector<TermPtr> succ = step_relation(r, Family::All);
  res.checked++;
  if (succ.size() != 2) fail("expected exactly two successors, got " + std::to_string(succ.size()));

  TermPtr s_bot = step(r, {{}, Rule::B5, 0});
  TermPtr expected_bot = Term::efq(boxc, inner_case);
  res.checked++;
  if (!alpha_eq(s_bot, expected_bot)) fail("B5 collapse differs from the displayed reduct");

  TermPtr t_final = step(s_bot, {{}, Rule::PBot, -1});
  TermPtr expected_final =
      Term::case_of(Term::var("t1"), "x", Term::efq(boxc, Term::var("t2")), "y",
                    Term::efq(boxc, Term::var("t3")));
  res.checked++;
  if (!alpha_eq(t_final, expected_final)) fail("PBot reduct differs from the displayed term");

  // The rejoining route: permute inside the argument, pull the case out,
  // then collapse both boxes.
  TermPtr k1 = step(r, {{0}, Rule::PBot, -1});
  TermPtr expected_k1 = Term::box(
      {{"z", c}},
      {Term::case_of(Term::var("t1"), "x", Term::efq(boxc, Term::var("t2")), "y",
                     Term::efq(boxc, Term::var("t3")))},
      Term::var("s1"));
  res.checked++;
  if (!alpha_eq(k1, expected_k1)) fail("inner PBot step differs from the displayed term");

  TermPtr k2 = step(k1, {{}, Rule::P4, 0});
  TermPtr expected_k2 = Term::case_of(
      Term::var("t1"), "x",
      Term::box({{"z", c}}, {Term::efq(boxc, Term::var("t2"))}, Term::var("s1")), "y",
      Term::box({{"z", c}}, {Term::efq(boxc, Term::var("t3"))}, Term::var("s1")));
  res.checked++;
  if (!alpha_eq(k2, expected_k2)) fail("P4 step differs from the displayed term");

  TermPtr k3 = step(k2, {{1}, Rule::B5, 0});
  TermPtr k4 = step(k3, {{2}, Rule::B5, 0});
  res.checked++;
  if (!alpha_eq(k4, t_final)) fail("the critical pair does not rejoin exactly");

  res.checked++;
  if (!postponement_joins(Context(), r, t_final, Family::P))
    fail("bounded search does not find the rejoin");

  res.seconds = now_seconds() - t0;
  return res;
}

// -- decision procedure -------------------------------------------------------

SuiteResult decide_spot_suite() {
  SuiteResult res;
  res.name = "decide-spot-checks";
  double t0 = now_seconds();
  FormulaPtr p = Formula::atom("p"), rr = Formula::atom("r");
  auto expect = [&](const FormulaPtr& f, bool want, const char* label) {
    ++res.checked;
    if (decide({}, f) != want) {
      ++res.failures;
      if (res.samples.size() < 5)
        res.samples.push_back(std::string(label) + ": " + print_formula(f));
    }
  };
  expect(Formula::impl(p, Formula::box(p)), true, "coreflection");
  expect(Formula::impl(Formula::box(Formula::impl(p, rr)),
                       Formula::impl(Formula::box(p), Formula::box(rr))),
         true, "K");
  expect(Formula::impl(Formula::box(p), p), false, "reflection is not a theorem");
  expect(Formula::impl(Formula::impl(Formula::impl(p, rr), p), p), false, "Peirce");
  expect(Formula::disj(p, Formula::impl(p, Formula::bot())), false, "excluded middle");
  expect(Formula::bot(), false, "consistency");
  expect(Formula::top(), true, "top");
  // Every catalogue instance over {p, r}.
  std::vector<FormulaPtr> pool = {p, rr};
  for (const SchemeInfo& scheme : axiom_catalogue()) {
    size_t combos = 1;
    for (size_t k = 0; k < scheme.arity; ++k) combos *= pool.size();
    for (size_t mask = 0; mask < combos; ++mask) {
      std::vector<FormulaPtr> parts;
      size_t m = mask;
      for (size_t k = 0; k < scheme.arity; ++k, m /= pool.size()) parts.push_back(pool[m % 2]);
      FormulaPtr inst = axiom_instance(scheme.id, parts);
      ++res.checked;
      if (!decide({}, inst)) {
        ++res.failures;
        if (res.samples.size() < 5)
          res.samples.push_back("catalogue instance unprovable: " + print_formula(inst));
      }
      ++res.checked;
      if (!check({}, ipc_axiom_term(scheme.id, parts), inst)) {
        ++res.failures;
        if (res.samples.size() < 5)
          res.samples.push_back("catalogue term does not type at " + print_formula(inst));
      }
    }
  }
  res.items = res.checked;
  res.seconds = now_seconds() - t0;
  return res;
}

SuiteResult decide_oracle_agreement_suite(const RunOptions& opts, std::vector<std::string> atoms,
                                          int max_connectives, int oracle_bound) {
  SuiteResult res;
  res.name = "decide-oracle-agreement";
  double t0 = now_seconds();
  std::vector<FormulaPtr> batch;
  std::vector<std::string> samples;
  auto flush = [&]() {
    uint64_t checked = 0, failures = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : checked, failures) \
    if (opts.parallel)
#endif
    for (int64_t i = 0; i < static_cast<int64_t>(batch.size()); ++i) {
      const FormulaPtr& f = batch[static_cast<size_t>(i)];
      bool d = decide({}, f);
      bool o = oracle_provable({}, f, oracle_bound);
      ++checked;
      if (d != o) {
        ++failures;
#ifdef _OPENMP
#pragma omp critical
#endif
        if (samples.size() < 32)
          samples.push_back("decide=" + std::to_string(d) + " oracle=" + std::to_string(o) +
                            " for " + print_formula(f));
      }
    }
    res.checked += checked;
    res.failures += failures;
    batch.clear();
  };
  enumerate_formulas(atoms, max_connectives, [&](const FormulaPtr& f) {
    batch.push_back(f);
    if (batch.size() >= 16384) flush();
    return true;
  });
  flush();
  res.items = res.checked;
  std::sort(samples.begin(), samples.end());
  if (samples.size() > static_cast<size_t>(opts.sample_limit))
    samples.resize(static_cast<size_t>(opts.sample_limit));
  res.samples = std::move(samples);
  res.seconds = now_seconds() - t0;
  return res;
}

std::vector<SuiteResult> metatheory_suite(const RunOptions& opts, std::vector<std::string> atoms,
                                          int max_size) {
  std::vector<SuiteResult> out;
  for (MetaProperty prop :
       {MetaProperty::Disjunction, MetaProperty::WeakDisjunction, MetaProperty::BoxPrimality,
        MetaProperty::Reflection, MetaProperty::Consistency}) {
    double t0 = now_seconds();
    MetaReport rep = check_metatheory(prop, atoms, max_size, opts.parallel);
    SuiteResult r;
    r.name = std::string("metatheory-") + meta_property_name(prop);
    r.items = rep.checked;
    r.checked = rep.checked;
    r.failures = rep.counterexamples.size();
    for (size_t i = 0; i < rep.counterexamples.size() && i < 5; ++i)
      r.samples.push_back(rep.counterexamples[i]);
    r.seconds = now_seconds() - t0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<SuiteResult> selftest_lemmas(const RunOptions& opts) {
  std::vector<SuiteResult> out;
  out.push_back(degree_lemma_suite(opts));
  out.push_back(subject_reduction_suite(opts));
  out.push_back(normalization_suite(opts));
  out.push_back(subformula_suite(opts));
  out.push_back(structure_suite(opts));
  for (auto& r : cps_lemma_suite(opts)) out.push_back(std::move(r));
  out.push_back(postponement_suite(opts));
  out.push_back(critical_pair_suite());
  return out;
}

std::vector<SuiteResult> selftest_metatheory(const RunOptions& opts) {
  std::vector<SuiteResult> out = metatheory_suite(opts);
  out.push_back(decide_spot_suite());
  return out;
}

std::vector<SuiteResult> selftest_all(const RunOptions& opts) {
  std::vector<SuiteResult> out = selftest_lemmas(opts);
  for (auto& r : selftest_metatheory(opts)) out.push_back(std::move(r));
  out.push_back(decide_oracle_agreement_suite(opts));
  return out;
}

}  // namespace iel
