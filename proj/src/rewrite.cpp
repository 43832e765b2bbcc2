#include "iel/rewrite.hpp"

#include <algorithm>
#include <unordered_set>

#include "json.hpp"

namespace iel {

const char* rule_name(Rule r) {
  switch (r) {
    case Rule::D1: return "D1";
    case Rule::D2: return "D2";
    case Rule::D3: return "D3";
    case Rule::D4: return "D4";
    case Rule::D5: return "D5";
    case Rule::P1: return "P1";
    case Rule::P2: return "P2";
    case Rule::P3: return "P3";
    case Rule::P4: return "P4";
    case Rule::PBot: return "PBot";
    case Rule::B1: return "B1";
    case Rule::B2: return "B2";
    case Rule::B3: return "B3";
    case Rule::B4: return "B4";
    case Rule::B5: return "B5";
  }
  return "?";
}

std::optional<Rule> rule_from_name(const std::string& name) {
  static const Rule all[] = {Rule::D1, Rule::D2, Rule::D3, Rule::D4,   Rule::D5,
                             Rule::P1, Rule::P2, Rule::P3, Rule::P4,   Rule::PBot,
                             Rule::B1, Rule::B2, Rule::B3, Rule::B4,   Rule::B5};
  for (Rule r : all)
    if (name == rule_name(r)) return r;
  return std::nullopt;
}

Family rule_family(Rule r) {
  switch (r) {
    case Rule::D1: case Rule::D2: case Rule::D3: case Rule::D4: case Rule::D5:
      return Family::D;
    case Rule::P1: case Rule::P2: case Rule::P3: case Rule::P4: case Rule::PBot:
      return Family::P;
    default:
      return Family::Bot;
  }
}

namespace {

bool family_selected(Family want, Rule r) {
  return want == Family::All || rule_family(r) == want;
}

int family_rank(Rule r) {
  switch (rule_family(r)) {
    case Family::Bot: return 0;
    case Family::P: return 1;
    default: return 2;
  }
}

// Matches at a single node, ordered Bot > P > D, box arguments ascending.
void matches_at(const TermPtr& t, Family family, std::vector<Redex>& out, const Path& here) {
  std::vector<Redex> local;
  auto add = [&](Rule r, int arg = -1) {
    if (family_selected(family, r)) local.push_back({here, r, arg});
  };
  switch (t->kind()) {
    case TKind::App:
      if (t->fun()->kind() == TKind::Lam) add(Rule::D1);
      if (t->fun()->kind() == TKind::Case) add(Rule::P1);
      if (t->fun()->kind() == TKind::Efq) add(Rule::B1);
      break;
    case TKind::Proj:
      if (t->arg()->kind() == TKind::Pair) add(Rule::D2);
      if (t->arg()->kind() == TKind::Case) add(Rule::P2);
      if (t->arg()->kind() == TKind::Efq) add(Rule::B2);
      break;
    case TKind::Case:
      if (t->scrut()->kind() == TKind::Inj) add(Rule::D3);
      if (t->scrut()->kind() == TKind::Case) add(Rule::P3);
      if (t->scrut()->kind() == TKind::Efq) add(Rule::B3);
      break;
    case TKind::Efq:
      if (t->arg()->kind() == TKind::Case) add(Rule::PBot);
      if (t->arg()->kind() == TKind::Efq) add(Rule::B4);
      break;
    case TKind::Box: {
      for (size_t i = 0; i < t->box_arity(); ++i) {
        TKind k = t->box_arg(i)->kind();
        if (k == TKind::Box) add(Rule::D4, static_cast<int>(i));
        if (k == TKind::Case) add(Rule::P4, static_cast<int>(i));
        if (k == TKind::Efq) add(Rule::B5, static_cast<int>(i));
      }
      if (t->box_arity() == 1 && t->body()->kind() == TKind::Var &&
          t->body()->name() == t->binders()[0].name)
        add(Rule::D5);
      break;
    }
    default: break;
  }
  std::stable_sort(local.begin(), local.end(), [](const Redex& a, const Redex& b) {
    if (family_rank(a.rule) != family_rank(b.rule)) return family_rank(a.rule) < family_rank(b.rule);
    if (a.rule != b.rule) return static_cast<int>(a.rule) < static_cast<int>(b.rule);
    return a.arg < b.arg;
  });
  for (auto& r : local) out.push_back(std::move(r));
}

void collect_pre(const TermPtr& t, Family family, Path& path, std::vector<Redex>& out) {
  matches_at(t, family, out, path);
  for (size_t i = 0; i < t->children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_pre(t->child(i), family, path, out);
    path.pop_back();
  }
}

void collect_post(const TermPtr& t, Family family, Path& path, std::vector<Redex>& out) {
  for (size_t i = 0; i < t->children().size(); ++i) {
    path.push_back(static_cast<int>(i));
    collect_post(t->child(i), family, path, out);
    path.pop_back();
  }
  matches_at(t, family, out, path);
}

// Context at a path, extending through binders; nullopt when a binder type
// cannot be recovered (untypeable scrutinee or unannotated box argument).
std::optional<Context> context_at(const Context& ctx, const TermPtr& root, const Path& p) {
  Context c = ctx;
  TermPtr cur = root;
  for (int idx : p) {
    switch (cur->kind()) {
      case TKind::Lam:
        c.bind(cur->name(), cur->ann());
        break;
      case TKind::Case:
        if (idx == 1 || idx == 2) {
          auto st = infer_opt(c, cur->scrut());
          if (!st || (*st)->kind() != FKind::Disj) return std::nullopt;
          c.bind(idx == 1 ? cur->name() : cur->name2(), idx == 1 ? (*st)->lhs() : (*st)->rhs());
        }
        break;
      case TKind::Box:
        if (static_cast<size_t>(idx) == cur->box_arity()) {
          for (size_t i = 0; i < cur->box_arity(); ++i) {
            if (cur->binders()[i].ann) {
              c.bind(cur->binders()[i].name, *cur->binders()[i].ann);
            } else {
              auto at = infer_opt(c, cur->box_arg(i));
              if (!at || (*at)->kind() != FKind::Box) return std::nullopt;
              c.bind(cur->binders()[i].name, (*at)->body());
            }
          }
        }
        break;
      default: break;
    }
    cur = cur->child(idx);
  }
  return c;
}

// Renames binder (inside body) away from the incoming free variables.
std::pair<std::string, TermPtr> avoid_capture(const std::string& binder, TermPtr body,
                                              const std::set<std::string>& incoming) {
  if (!incoming.count(binder)) return {binder, std::move(body)};
  std::set<std::string> avoid = incoming;
  for (const auto& v : free_vars(body)) avoid.insert(v);
  std::string fresh = fresh_name(binder, avoid);
  return {fresh, subst(body, binder, Term::var(fresh))};
}

TermPtr contract(const TermPtr& t, Rule rule, int arg, const std::optional<Context>& node_ctx) {
  auto mismatch = [&]() -> RewriteError {
    return RewriteError(std::string("rule ") + rule_name(rule) + " does not match the subterm " +
                        print_term(t));
  };
  switch (rule) {
    case Rule::D1: {
      if (t->kind() != TKind::App || t->fun()->kind() != TKind::Lam) throw mismatch();
      return subst(t->fun()->body(), t->fun()->name(), t->arg());
    }
    case Rule::D2: {
      if (t->kind() != TKind::Proj || t->arg()->kind() != TKind::Pair) throw mismatch();
      return t->index() == 1 ? t->arg()->fst() : t->arg()->snd();
    }
    case Rule::D3: {
      if (t->kind() != TKind::Case || t->scrut()->kind() != TKind::Inj) throw mismatch();
      const TermPtr& inj = t->scrut();
      if (inj->index() == 1) return subst(t->left(), t->name(), inj->arg());
      return subst(t->right(), t->name2(), inj->arg());
    }
    case Rule::D4: {
      if (t->kind() != TKind::Box || arg < 0 || static_cast<size_t>(arg) >= t->box_arity() ||
          t->box_arg(arg)->kind() != TKind::Box)
        throw mismatch();
      const TermPtr& inner = t->box_arg(arg);
      std::vector<BoxBinder> outer = t->binders();
      std::vector<BoxBinder> innerb = inner->binders();
      TermPtr r = t->body();
      TermPtr u = inner->body();
      std::set<std::string> avoid = free_vars(r);
      for (const auto& v : free_vars(u)) avoid.insert(v);
      for (size_t j = 0; j < t->box_arity(); ++j)
        for (const auto& v : free_vars(t->box_arg(j))) avoid.insert(v);
      for (size_t j = 0; j < inner->box_arity(); ++j)
        for (const auto& v : free_vars(inner->box_arg(j))) avoid.insert(v);
      for (const auto& b : outer) avoid.insert(b.name);
      for (const auto& b : innerb) avoid.insert(b.name);
      // Outer binders other than the merged one must not capture u.
      std::set<std::string> fv_u = free_vars(u);
      for (size_t k = 0; k < outer.size(); ++k) {
        if (static_cast<int>(k) == arg) continue;
        if (fv_u.count(outer[k].name)) {
          std::string nk = fresh_name(outer[k].name, avoid);
          avoid.insert(nk);
          r = subst(r, outer[k].name, Term::var(nk));
          outer[k].name = nk;
        }
      }
      // Inner binders join the outer list; keep them clear of r and the rest.
      std::set<std::string> used;
      for (size_t k = 0; k < outer.size(); ++k)
        if (static_cast<int>(k) != arg) used.insert(outer[k].name);
      std::set<std::string> fv_r = free_vars(r);
      for (auto& b : innerb) {
        if (fv_r.count(b.name) || used.count(b.name)) {
          std::string nb = fresh_name(b.name, avoid);
          avoid.insert(nb);
          u = subst(u, b.name, Term::var(nb));
          b.name = nb;
        }
        used.insert(b.name);
      }
      std::vector<BoxBinder> binders;
      std::vector<TermPtr> args;
      for (size_t k = 0; k < outer.size(); ++k) {
        if (static_cast<int>(k) == arg) {
          for (size_t j = 0; j < innerb.size(); ++j) {
            binders.push_back(innerb[j]);
            args.push_back(inner->box_arg(j));
          }
        } else {
          binders.push_back(outer[k]);
          args.push_back(t->box_arg(k));
        }
      }
      std::string merged = t->binders()[arg].name;
      return Term::box(std::move(binders), std::move(args), subst(r, merged, u));
    }
    case Rule::D5: {
      if (t->kind() != TKind::Box || t->box_arity() != 1 || t->body()->kind() != TKind::Var ||
          t->body()->name() != t->binders()[0].name)
        throw mismatch();
      return t->box_arg(0);
    }
    case Rule::P1: {
      if (t->kind() != TKind::App || t->fun()->kind() != TKind::Case) throw mismatch();
      const TermPtr& c = t->fun();
      std::set<std::string> incoming = free_vars(t->arg());
      auto [x, l] = avoid_capture(c->name(), c->left(), incoming);
      auto [y, r] = avoid_capture(c->name2(), c->right(), incoming);
      return Term::case_of(c->scrut(), x, Term::app(l, t->arg()), y, Term::app(r, t->arg()));
    }
    case Rule::P2: {
      if (t->kind() != TKind::Proj || t->arg()->kind() != TKind::Case) throw mismatch();
      const TermPtr& c = t->arg();
      return Term::case_of(c->scrut(), c->name(), Term::proj(t->index(), c->left()), c->name2(),
                           Term::proj(t->index(), c->right()));
    }
    case Rule::P3: {
      if (t->kind() != TKind::Case || t->scrut()->kind() != TKind::Case) throw mismatch();
      const TermPtr& c = t->scrut();
      std::set<std::string> incoming = free_vars(t->left());
      for (const auto& v : free_vars(t->right())) incoming.insert(v);
      auto [x, l] = avoid_capture(c->name(), c->left(), incoming);
      auto [y, r] = avoid_capture(c->name2(), c->right(), incoming);
      return Term::case_of(
          c->scrut(), x,
          Term::case_of(l, t->name(), t->left(), t->name2(), t->right()), y,
          Term::case_of(r, t->name(), t->left(), t->name2(), t->right()));
    }
    case Rule::P4: {
      if (t->kind() != TKind::Box || arg < 0 || static_cast<size_t>(arg) >= t->box_arity() ||
          t->box_arg(arg)->kind() != TKind::Case)
        throw mismatch();
      const TermPtr& c = t->box_arg(arg);
      std::set<std::string> incoming;
      for (size_t j = 0; j < t->box_arity(); ++j)
        if (static_cast<int>(j) != arg)
          for (const auto& v : free_vars(t->box_arg(j))) incoming.insert(v);
      std::set<std::string> body_free = free_vars(t->body());
      for (const auto& b : t->binders()) body_free.erase(b.name);
      for (const auto& v : body_free) incoming.insert(v);
      auto [x, l] = avoid_capture(c->name(), c->left(), incoming);
      auto [y, r] = avoid_capture(c->name2(), c->right(), incoming);
      auto rebuild = [&](const TermPtr& branch) {
        std::vector<TermPtr> args;
        for (size_t j = 0; j < t->box_arity(); ++j)
          args.push_back(static_cast<int>(j) == arg ? branch : t->box_arg(j));
        return Term::box(t->binders(), std::move(args), t->body());
      };
      return Term::case_of(c->scrut(), x, rebuild(l), y, rebuild(r));
    }
    case Rule::PBot: {
      if (t->kind() != TKind::Efq || t->arg()->kind() != TKind::Case) throw mismatch();
      const TermPtr& c = t->arg();
      return Term::case_of(c->scrut(), c->name(), Term::efq(t->ann(), c->left()), c->name2(),
                           Term::efq(t->ann(), c->right()));
    }
    case Rule::B1: {
      if (t->kind() != TKind::App || t->fun()->kind() != TKind::Efq) throw mismatch();
      const TermPtr& e = t->fun();
      FormulaPtr a = e->ann()->kind() == FKind::Impl ? e->ann()->rhs() : e->ann();
      return Term::efq(a, e->arg());
    }
    case Rule::B2: {
      if (t->kind() != TKind::Proj || t->arg()->kind() != TKind::Efq) throw mismatch();
      const TermPtr& e = t->arg();
      FormulaPtr a = e->ann();
      if (a->kind() == FKind::Conj) a = t->index() == 1 ? a->lhs() : a->rhs();
      return Term::efq(a, e->arg());
    }
    case Rule::B3: {
      if (t->kind() != TKind::Case || t->scrut()->kind() != TKind::Efq) throw mismatch();
      const TermPtr& e = t->scrut();
      FormulaPtr a = e->ann();
      if (node_ctx) {
        if (auto ty = infer_opt(*node_ctx, t)) a = *ty;
      }
      return Term::efq(a, e->arg());
    }
    case Rule::B4: {
      if (t->kind() != TKind::Efq || t->arg()->kind() != TKind::Efq) throw mismatch();
      return Term::efq(t->ann(), t->arg()->arg());
    }
    case Rule::B5: {
      if (t->kind() != TKind::Box || arg < 0 || static_cast<size_t>(arg) >= t->box_arity() ||
          t->box_arg(arg)->kind() != TKind::Efq)
        throw mismatch();
      const TermPtr& e = t->box_arg(arg);
      FormulaPtr a = e->ann();
      if (node_ctx) {
        if (auto ty = infer_opt(*node_ctx, t)) a = *ty;
      }
      return Term::efq(a, e->arg());
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace

std::vector<Redex> redexes(const TermPtr& t, Family family) {
  std::vector<Redex> out;
  Path path;
  collect_pre(t, family, path, out);
  return out;
}

TermPtr step(const TermPtr& t, const Redex& r, const Context& ctx) {
  TermPtr node = subterm_at(t, r.path);
  std::optional<Context> node_ctx;
  if (r.rule == Rule::B3 || r.rule == Rule::B5) node_ctx = context_at(ctx, t, r.path);
  TermPtr contractum = contract(node, r.rule, r.arg, node_ctx);
  return replace_at(t, r.path, contractum);
}

std::vector<TermPtr> step_relation(const TermPtr& t, Family family, const Context& ctx) {
  std::vector<TermPtr> out;
  std::unordered_set<std::string> seen;
  for (const Redex& r : redexes(t, family)) {
    TermPtr s = step(t, r, ctx);
    if (seen.insert(canonical_key(s)).second) out.push_back(s);
  }
  return out;
}

uint64_t default_fuel(const TermPtr& t) {
  int n = term_size(t);
  if (n > 30) return UINT64_MAX / 4;
  uint64_t f = 10;
  for (int i = 0; i < n; ++i) f *= 4;
  return f;
}

Trace normalize(const TermPtr& t, Strategy strategy, uint64_t fuel, const Context& ctx) {
  Trace trace;
  trace.start = t;
  TermPtr cur = t;
  for (uint64_t used = 0;; ++used) {
    std::vector<Redex> rs;
    Path path;
    if (strategy == Strategy::LeftmostOutermost)
      collect_pre(cur, Family::All, path, rs);
    else
      collect_post(cur, Family::All, path, rs);
    if (rs.empty()) break;
    if (used >= fuel) {
      trace.result = cur;
      throw FuelExhausted(std::move(trace));
    }
    const Redex& r = rs.front();
    TermPtr next = step(cur, r, ctx);
    trace.steps.push_back({r.rule, r.path, r.arg, cur, next});
    cur = next;
  }
  trace.result = cur;
  return trace;
}

bool is_normal(const TermPtr& t) { return redexes(t, Family::All).empty(); }

bool is_neutral(const TermPtr& t) {
  switch (t->kind()) {
    case TKind::Var:
    case TKind::App:
    case TKind::Proj:
    case TKind::Case:
    case TKind::Efq:
      return true;
    default:
      return false;
  }
}

NdRule last_rule(const TermPtr& t) {
  switch (t->kind()) {
    case TKind::Var: return NdRule::Assumption;
    case TKind::Lam: return NdRule::ImplIntro;
    case TKind::App: return NdRule::ImplElim;
    case TKind::Pair: return NdRule::AndIntro;
    case TKind::Proj: return NdRule::AndElim;
    case TKind::Inj: return NdRule::OrIntro;
    case TKind::Case: return NdRule::OrElim;
    case TKind::Efq: return NdRule::BotElim;
    case TKind::Unit: return NdRule::TopIntro;
    case TKind::Box: return NdRule::BoxIntro;
  }
  throw std::logic_error("unreachable");
}

const char* nd_rule_name(NdRule r) {
  switch (r) {
    case NdRule::Assumption: return "assumption";
    case NdRule::ImplIntro: return "impl-intro";
    case NdRule::ImplElim: return "impl-elim";
    case NdRule::AndIntro: return "and-intro";
    case NdRule::AndElim: return "and-elim";
    case NdRule::OrIntro: return "or-intro";
    case NdRule::OrElim: return "or-elim";
    case NdRule::BotElim: return "bot-elim";
    case NdRule::TopIntro: return "top-intro";
    case NdRule::BoxIntro: return "box-intro";
  }
  return "?";
}

bool is_intro_of(NdRule r, const FormulaPtr& f) {
  switch (f->kind()) {
    case FKind::Impl: return r == NdRule::ImplIntro;
    case FKind::Conj: return r == NdRule::AndIntro;
    case FKind::Disj: return r == NdRule::OrIntro;
    case FKind::Box: return r == NdRule::BoxIntro;
    case FKind::Top: return r == NdRule::TopIntro;
    default: return false;
  }
}

bool check_subformula_property(const Context& ctx, const TermPtr& t, const FormulaPtr& goal) {
  if (!is_normal(t)) throw RewriteError("check_subformula_property: term is not normal");
  if (!check(ctx, t, goal))
    throw RewriteError("check_subformula_property: term does not check at the goal");
  std::vector<FormulaPtr> allowed = subformulas(goal);
  for (const auto& [name, f] : ctx.bindings()) {
    std::vector<FormulaPtr> sub = subformulas(f);
    allowed.insert(allowed.end(), sub.begin(), sub.end());
  }
  std::sort(allowed.begin(), allowed.end(), FormulaLess{});
  allowed.erase(std::unique(allowed.begin(), allowed.end(),
                            [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
                allowed.end());
  for (const FormulaPtr& f : derivation_formulas(ctx, t)) {
    if (!std::binary_search(allowed.begin(), allowed.end(), f, FormulaLess{})) return false;
  }
  return true;
}

std::string trace_to_json(const Trace& trace) {
  nlohmann::json j;
  j["start"] = print_term(trace.start);
  j["steps"] = nlohmann::json::array();
  for (const auto& s : trace.steps) {
    nlohmann::json js;
    js["rule"] = rule_name(s.rule);
    js["path"] = s.path;
    if (s.arg >= 0) js["arg"] = s.arg;
    js["term"] = print_term(s.after);
    j["steps"].push_back(std::move(js));
  }
  j["result"] = print_term(trace.result);
  return j.dump();
}

}  // namespace iel
