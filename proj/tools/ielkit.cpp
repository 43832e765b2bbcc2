#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "iel/cps.hpp"
#include "iel/decide.hpp"
#include "iel/degree.hpp"
#include "iel/harness.hpp"
#include "iel/parse.hpp"
#include "iel/rewrite.hpp"

using nlohmann::json;

namespace {

// "-" means read the argument from stdin.
std::string slurp_arg(const std::string& arg) {
  if (arg != "-") return arg;
  std::ostringstream os;
  os << std::cin.rdbuf();
  return os.str();
}

iel::Context parse_hyps(const std::vector<std::string>& hyps) {
  iel::Context ctx;
  for (const auto& h : hyps) {
    size_t colon = h.find(':');
    if (colon == std::string::npos)
      throw iel::ParseError("hypothesis must look like 'name: formula'", 1, 1);
    std::string name = h.substr(0, colon);
    while (!name.empty() && name.back() == ' ') name.pop_back();
    size_t start = name.find_first_not_of(' ');
    if (start == std::string::npos) throw iel::ParseError("empty hypothesis name", 1, 1);
    name = name.substr(start);
    ctx.bind(name, iel::parse_formula(h.substr(colon + 1)));
  }
  return ctx;
}

uint64_t fuel_or_default(uint64_t flag_fuel, const iel::TermPtr& t) {
  if (flag_fuel > 0) return flag_fuel;
  if (const char* env = std::getenv("KERNEL_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return iel::default_fuel(t);
}

int print_suites(const std::vector<iel::SuiteResult>& suites, bool as_json) {
  bool ok = true;
  if (as_json) {
    json j = json::array();
    for (const auto& s : suites) {
      ok = ok && s.pass();
      j.push_back({{"suite", s.name},
                   {"pass", s.pass()},
                   {"items", s.items},
                   {"checks", s.checked},
                   {"failures", s.failures},
                   {"seconds", s.seconds},
                   {"samples", s.samples}});
    }
    std::cout << j.dump(2) << "\n";
  } else {
    for (const auto& s : suites) {
      ok = ok && s.pass();
      std::cout << s.line() << "\n";
    }
    std::cout << (ok ? "all suites passed" : "some suites FAILED") << "\n";
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ielkit - proof kernel and analysis toolkit for the intuitionistic logic of belief"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  // check
  auto* cmd_check = app.add_subcommand("check", "type-check a proof term");
  std::string check_term, check_type;
  std::vector<std::string> check_hyps;
  cmd_check->add_option("term", check_term, "proof term (or - for stdin)")->required();
  cmd_check->add_option("--type", check_type, "expected formula");
  cmd_check->add_option("--hyp", check_hyps, "hypothesis 'name: formula' (repeatable)");

  // normalize
  auto* cmd_norm = app.add_subcommand("normalize", "reduce a term to normal form");
  std::string norm_term, norm_strategy = "lo";
  std::vector<std::string> norm_hyps;
  uint64_t norm_fuel = 0;
  bool norm_trace = false;
  cmd_norm->add_option("term", norm_term, "proof term (or - for stdin)")->required();
  cmd_norm->add_option("--strategy", norm_strategy, "lo (leftmost-outermost) or li")
      ->check(CLI::IsMember({"lo", "li"}));
  cmd_norm->add_option("--fuel", norm_fuel, "step budget (default KERNEL_FUEL or 10*4^size)");
  cmd_norm->add_flag("--trace", norm_trace, "print every reduction step");
  cmd_norm->add_option("--hyp", norm_hyps, "hypothesis 'name: formula' (repeatable)");

  // degree
  auto* cmd_degree = app.add_subcommand("degree", "permutation degree of a term");
  std::string degree_term;
  cmd_degree->add_option("term", degree_term, "term (or - for stdin)")->required();

  // cps
  auto* cmd_cps = app.add_subcommand("cps", "CPS-translate a term into simple type theory");
  std::string cps_term;
  std::vector<std::string> cps_hyps;
  bool cps_modified = false, cps_check = false;
  cmd_cps->add_option("term", cps_term, "proof term (or - for stdin)")->required();
  cmd_cps->add_flag("--modified", cps_modified, "use the modified translation");
  cmd_cps->add_flag("--check-lemmas", cps_check, "verify the translation lemmas on this term");
  cmd_cps->add_option("--hyp", cps_hyps, "hypothesis 'name: formula' (repeatable)");

  // decide
  auto* cmd_decide = app.add_subcommand("decide", "decide derivability");
  std::string decide_goal, decide_expect;
  std::vector<std::string> decide_hyps;
  cmd_decide->add_option("formula", decide_goal, "goal formula (or - for stdin)")->required();
  cmd_decide->add_option("--hyp", decide_hyps, "hypothesis formula (repeatable)");
  cmd_decide->add_option("--expect", decide_expect, "fail unless the verdict matches")
      ->check(CLI::IsMember({"provable", "unprovable"}));

  // meta
  auto* cmd_meta = app.add_subcommand("meta", "check a metatheoretic property by enumeration");
  std::string meta_property = "disjunction", meta_atoms = "p,r";
  int meta_size = 3;
  bool meta_serial = false;
  cmd_meta->add_option("--property", meta_property, "property to check")
      ->check(CLI::IsMember({"disjunction", "weak-disjunction", "box-primality", "reflection",
                             "consistency"}));
  cmd_meta->add_option("--atoms", meta_atoms, "comma-separated atom names");
  cmd_meta->add_option("--size", meta_size, "maximum connective count");
  cmd_meta->add_flag("--serial", meta_serial, "disable the parallel scan");

  // selftest
  auto* cmd_self = app.add_subcommand("selftest", "run the built-in verification suites");
  std::string self_suite = "all";
  bool self_serial = false;
  uint64_t self_seed = 0x1e55eed5u;
  cmd_self->add_option("suite", self_suite, "lemmas, metatheory or all")
      ->check(CLI::IsMember({"lemmas", "metatheory", "all"}));
  cmd_self->add_flag("--serial", self_serial, "run the corpus loops serially");
  cmd_self->add_option("--seed", self_seed, "corpus seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  bool as_json = format == "json";
  try {
    if (*cmd_check) {
      iel::Context ctx = parse_hyps(check_hyps);
      iel::TermPtr t = iel::parse_term(slurp_arg(check_term));
      try {
        iel::FormulaPtr ty = iel::infer(ctx, t);
        bool match = check_type.empty() || iel::equal(ty, iel::parse_formula(check_type));
        if (as_json) {
          std::cout << json{{"type", iel::print_formula(ty)}, {"match", match}}.dump() << "\n";
        } else {
          std::cout << iel::print_term(t) << " : " << iel::print_formula(ty) << "\n";
          if (!check_type.empty() && !match) std::cout << "does not match the expected type\n";
        }
        return match ? 0 : 1;
      } catch (const iel::TypeError& e) {
        if (as_json)
          std::cout << e.to_json() << "\n";
        else
          std::cout << "type error: " << e.render() << "\n";
        return 1;
      }
    }

    if (*cmd_norm) {
      iel::Context ctx = parse_hyps(norm_hyps);
      iel::TermPtr t = iel::parse_term(slurp_arg(norm_term));
      iel::Strategy strat = norm_strategy == "li" ? iel::Strategy::LeftmostInnermost
                                                  : iel::Strategy::LeftmostOutermost;
      try {
        iel::Trace tr = iel::normalize(t, strat, fuel_or_default(norm_fuel, t), ctx);
        if (as_json) {
          std::cout << iel::trace_to_json(tr) << "\n";
        } else {
          if (norm_trace) {
            std::cout << iel::print_term(tr.start) << "\n";
            for (const auto& s : tr.steps)
              std::cout << "  --" << iel::rule_name(s.rule) << "--> " << iel::print_term(s.after)
                        << "\n";
          }
          std::cout << iel::print_term(tr.result) << "\n";
        }
        return 0;
      } catch (const iel::FuelExhausted& e) {
        if (as_json)
          std::cout << json{{"error", "fuel exhausted"},
                            {"steps", e.partial.steps.size()}}.dump()
                    << "\n";
        else
          std::cout << "fuel exhausted after " << e.partial.steps.size() << " steps\n";
        return 1;
      }
    }

    if (*cmd_degree) {
      iel::TermPtr t = iel::parse_term(slurp_arg(degree_term));
      iel::DegreeReport rep = iel::degree(t);
      if (as_json)
        std::cout << json{{"bar", rep.bar.str()}, {"hash", rep.hash.str()}}.dump() << "\n";
      else
        std::cout << "bar=" << rep.bar << " hash=" << rep.hash << "\n";
      return 0;
    }

    if (*cmd_cps) {
      iel::Context ctx = parse_hyps(cps_hyps);
      iel::TermPtr t = iel::parse_term(slurp_arg(cps_term));
      iel::SttTermPtr image = cps_modified ? iel::cps_mod(t, ctx) : iel::cps(t, ctx);
      json checks = json::array();
      bool ok = true;
      if (cps_check) {
        auto verdict = [&](const std::string& name, bool pass) {
          checks.push_back({{"lemma", name}, {"pass", pass}});
          ok = ok && pass;
        };
        iel::SttTermPtr plain = iel::cps(t, ctx);
        iel::SttTermPtr mod = iel::cps_mod(t, ctx);
        auto ty = iel::infer_opt(ctx, t);
        if (ty) {
          iel::SttContext sctx = iel::translate_context(ctx);
          iel::SimpleTypePtr want = iel::neg_type(*ty);
          bool typing_ok = false, typing_mod_ok = false;
          try {
            typing_ok = iel::stt_type_equal(iel::stt_infer(sctx, plain), want);
            typing_mod_ok = iel::stt_type_equal(iel::stt_infer(sctx, mod), want);
          } catch (const iel::SttError&) {
          }
          verdict("typing-preservation", typing_ok);
          verdict("typing-preservation-modified", typing_mod_ok);
        }
        verdict("redex-deletion",
                iel::stt_reduces_to(plain, mod, 4 * iel::stt_size(plain)).found);
        bool sim_ok = true, collapse_ok = true;
        for (const iel::Redex& r : iel::redexes(t, iel::Family::D)) {
          iel::TermPtr s = iel::step(t, r, ctx);
          iel::SttTermPtr ms = iel::cps_mod(s, ctx);
          auto reach =
              iel::stt_reduces_to(mod, ms, 4 * (iel::stt_size(mod) + iel::stt_size(ms)) + 16);
          sim_ok = sim_ok && reach.found && reach.steps >= 1;
        }
        verdict("detour-simulation", sim_ok);
        for (const iel::Redex& r : iel::redexes(t, iel::Family::P)) {
          iel::TermPtr s = iel::step(t, r, ctx);
          collapse_ok = collapse_ok && iel::stt_alpha_eq(mod, iel::cps_mod(s, ctx));
        }
        verdict("permutation-collapse", collapse_ok);
      }
      if (as_json) {
        json j{{"term", iel::print_stt(image)}};
        if (cps_check) j["lemmas"] = checks;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << iel::print_stt(image) << "\n";
        for (const auto& c : checks)
          std::cout << c["lemma"].get<std::string>() << ": "
                    << (c["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
      }
      return ok ? 0 : 1;
    }

    if (*cmd_decide) {
      std::vector<iel::FormulaPtr> hyps;
      for (const auto& h : decide_hyps) hyps.push_back(iel::parse_formula(h));
      iel::FormulaPtr goal = iel::parse_formula(slurp_arg(decide_goal));
      iel::DecideStats stats;
      bool provable = iel::decide(hyps, goal, &stats);
      if (as_json) {
        std::cout << json{{"provable", provable},
                          {"universe", stats.universe_size},
                          {"hypothesis_sets", stats.hypothesis_sets},
                          {"sequents", stats.sequents_derived}}
                         .dump()
                  << "\n";
      } else {
        std::cout << (provable ? "provable" : "unprovable") << " (universe="
                  << stats.universe_size << " hypothesis-sets=" << stats.hypothesis_sets
                  << " sequents=" << stats.sequents_derived << ")\n";
      }
      if (!decide_expect.empty())
        return (decide_expect == "provable") == provable ? 0 : 1;
      return 0;
    }

    if (*cmd_meta) {
      auto prop = iel::meta_property_from_name(meta_property);
      std::vector<std::string> atoms;
      std::stringstream ss(meta_atoms);
      std::string atom;
      while (std::getline(ss, atom, ','))
        if (!atom.empty()) atoms.push_back(atom);
      iel::MetaReport rep = iel::check_metatheory(*prop, atoms, meta_size, !meta_serial);
      if (as_json) {
        std::cout << json{{"property", iel::meta_property_name(rep.property)},
                          {"universe", rep.universe_desc},
                          {"checked", rep.checked},
                          {"counterexamples", rep.counterexamples}}
                         .dump()
                  << "\n";
      } else {
        std::cout << iel::meta_property_name(rep.property) << ": checked " << rep.checked
                  << " candidate(s), " << rep.counterexamples.size() << " counterexample(s)\n";
        for (const auto& c : rep.counterexamples) std::cout << "  " << c << "\n";
      }
      return rep.counterexamples.empty() ? 0 : 1;
    }

    if (*cmd_self) {
      iel::RunOptions opts;
      opts.parallel = !self_serial;
      opts.seed = self_seed;
      std::vector<iel::SuiteResult> suites;
      if (self_suite == "lemmas")
        suites = iel::selftest_lemmas(opts);
      else if (self_suite == "metatheory")
        suites = iel::selftest_metatheory(opts);
      else
        suites = iel::selftest_all(opts);
      return print_suites(suites, as_json);
    }
  } catch (const iel::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const iel::TypeError& e) {
    std::cerr << "type error: " << e.render() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
