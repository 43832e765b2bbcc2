#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iel/typing.hpp"

namespace iel {

// Reduction rules. D: detours, P: permutations, B: bottom conversions.
//   D1 beta, D2 projection of a pair, D3 case on an injection,
//   D4 box argument is itself a box (merge), D5 identity box.
//   P1 case under application, P2 case under projection, P3 case under case,
//   P4 case in a box argument, PBot efq over a case.
//   B1 efq applied, B2 efq projected, B3 case on an efq, B4 efq of an efq,
//   B5 efq in a box argument.
enum class Rule { D1, D2, D3, D4, D5, P1, P2, P3, P4, PBot, B1, B2, B3, B4, B5 };
enum class Family { D, P, Bot, All };

const char* rule_name(Rule r);
std::optional<Rule> rule_from_name(const std::string& name);
Family rule_family(Rule r);

// arg is the box argument index for D4/P4/B5, -1 otherwise.
struct Redex {
  Path path;
  Rule rule;
  int arg = -1;
};

struct ReductionStep {
  Rule rule;
  Path path;
  int arg = -1;
  TermPtr before, after;
};

struct Trace {
  TermPtr start;
  std::vector<ReductionStep> steps;
  TermPtr result;
};

enum class Strategy { LeftmostOutermost, LeftmostInnermost };

// All redex occurrences in leftmost-outermost order; at a shared position the
// families are ordered Bot > P > D, box arguments by ascending index.
std::vector<Redex> redexes(const TermPtr& t, Family family = Family::All);

struct RewriteError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One reduction step. The context is used only to re-infer the target
// annotations of B3/B5 contracta; on untypeable terms the existing annotation
// is kept.
TermPtr step(const TermPtr& t, const Redex& r, const Context& ctx = Context());

// All one-step successors under the family, deduplicated up to alpha.
std::vector<TermPtr> step_relation(const TermPtr& t, Family family, const Context& ctx = Context());

struct FuelExhausted : std::runtime_error {
  FuelExhausted(Trace partial_trace)
      : std::runtime_error("fuel exhausted after " + std::to_string(partial_trace.steps.size()) +
                           " steps"),
        partial(std::move(partial_trace)) {}
  Trace partial;
};

Trace normalize(const TermPtr& t, Strategy strategy, uint64_t fuel, const Context& ctx = Context());
uint64_t default_fuel(const TermPtr& t);  // 10 * 4^size, saturating

bool is_normal(const TermPtr& t);
// Root is an assumption or an elimination (Var, App, Proj, Case, Efq).
bool is_neutral(const TermPtr& t);

enum class NdRule {
  Assumption, ImplIntro, ImplElim, AndIntro, AndElim, OrIntro, OrElim,
  BotElim, TopIntro, BoxIntro
};
NdRule last_rule(const TermPtr& t);
const char* nd_rule_name(NdRule r);
bool is_intro_of(NdRule r, const FormulaPtr& f);

// Precondition: is_normal(t) and check(ctx, t, goal). True iff every formula
// in the typing derivation is a subformula of goal or of a hypothesis.
bool check_subformula_property(const Context& ctx, const TermPtr& t, const FormulaPtr& goal);

std::string trace_to_json(const Trace& trace);

}  // namespace iel
