#include "iel/gen.hpp"

#include <algorithm>

namespace iel {

uint64_t mix_seed(uint64_t seed, uint64_t index) {
  uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

namespace {

const std::vector<std::string>& untyped_vars() {
  static const std::vector<std::string> vars = {"x", "y", "z", "u", "v", "w"};
  return vars;
}

FormulaPtr small_formula(Rng& rng, const std::vector<std::string>& atoms, int size,
                         bool allow_bot) {
  if (size <= 0 || rng.chance(35)) {
    if (allow_bot && rng.chance(15)) return Formula::bot();
    return Formula::atom(rng.pick(atoms));
  }
  switch (rng.below(4)) {
    case 0:
      return Formula::impl(small_formula(rng, atoms, size - 1, allow_bot),
                           small_formula(rng, atoms, size - 1, allow_bot));
    case 1:
      return Formula::conj(small_formula(rng, atoms, size - 1, allow_bot),
                           small_formula(rng, atoms, size - 1, allow_bot));
    case 2:
      return Formula::disj(small_formula(rng, atoms, size - 1, allow_bot),
                           small_formula(rng, atoms, size - 1, allow_bot));
    default:
      return Formula::box(small_formula(rng, atoms, size - 1, allow_bot));
  }
}

struct UntypedGen {
  Rng& rng;
  static const std::vector<std::string>& atoms() {
    static const std::vector<std::string> a = {"p", "r", "s"};
    return a;
  }

  FormulaPtr ann() { return small_formula(rng, atoms(), rng.below(3), false); }
  FormulaPtr disj_ann() {
    return Formula::disj(small_formula(rng, atoms(), 1, false),
                         small_formula(rng, atoms(), 1, false));
  }
  TermPtr var() { return Term::var(rng.pick(untyped_vars())); }

  TermPtr gen(int budget) {
    if (budget <= 1 || rng.chance(18)) return var();
    int choice = rng.below(100);
    if (choice < 12) return Term::lam(rng.pick(untyped_vars()), ann(), gen(budget - 1));
    if (choice < 22) {
      int b = budget - 1;
      return Term::app(gen(b / 2), gen(b - b / 2));
    }
    if (choice < 30) {
      int b = budget - 1;
      return Term::pair(gen(b / 2), gen(b - b / 2));
    }
    if (choice < 36) return Term::proj(1 + rng.below(2), gen(budget - 1));
    if (choice < 42) return Term::inj(1 + rng.below(2), disj_ann(), gen(budget - 1));
    if (choice < 52) return gen_case(budget);
    if (choice < 62) return gen_box(budget);
    // Planted permutation redexes.
    if (choice < 72) return Term::app(gen_case(budget - 2), var());            // P1
    if (choice < 80) return Term::proj(1 + rng.below(2), gen_case(budget - 1));  // P2
    if (choice < 88) {  // P3
      int b = budget - 3;
      return Term::case_of(gen_case(std::max(3, b / 2)), rng.pick(untyped_vars()),
                           gen(std::max(1, b / 4)), rng.pick(untyped_vars()),
                           gen(std::max(1, b / 4)));
    }
    return gen_box_with(budget, gen_case(std::max(3, budget / 2)));  // P4
  }

  TermPtr gen_case(int budget) {
    int b = std::max(3, budget - 1);
    return Term::case_of(gen(b / 3), rng.pick(untyped_vars()), gen(b / 3),
                         rng.pick(untyped_vars()), gen(b - 2 * (b / 3)));
  }

  TermPtr gen_box(int budget) {
    int n = rng.below(3);
    std::vector<BoxBinder> binders;
    std::vector<TermPtr> args;
    int b = std::max(1, (budget - 1) / (n + 1));
    for (int i = 0; i < n; ++i) {
      binders.push_back({"b" + std::to_string(i), std::optional<FormulaPtr>{}});
      args.push_back(gen(b));
    }
    return Term::box(std::move(binders), std::move(args), gen(b));
  }

  TermPtr gen_box_with(int budget, TermPtr special) {
    std::vector<BoxBinder> binders{{"b0", std::optional<FormulaPtr>{}}};
    std::vector<TermPtr> args{std::move(special)};
    if (rng.chance(40)) {
      binders.push_back({"b1", std::optional<FormulaPtr>{}});
      args.push_back(gen(std::max(1, budget / 4)));
    }
    return Term::box(std::move(binders), std::move(args), gen(std::max(1, budget / 4)));
  }
};

struct TypedGen {
  Rng& rng;
  const TypedGenConfig& cfg;
  int fresh_counter = 0;

  std::string fresh_var() { return "v" + std::to_string(fresh_counter++); }

  FormulaPtr any_formula(int size) {
    return small_formula(rng, cfg.atoms, size, cfg.with_bot);
  }

  // Formulas inhabited relative to ctx; witness() always succeeds on them.
  FormulaPtr inhabited_formula(const Context& ctx, int size) {
    if (size <= 0 || rng.chance(30)) {
      std::vector<FormulaPtr> base;
      for (const auto& [n, f] : ctx.bindings())
        if (formula_size(f) <= 3) base.push_back(f);
      if (!base.empty() && rng.chance(70)) return rng.pick(base);
      FormulaPtr a = Formula::atom(rng.pick(cfg.atoms));
      return Formula::impl(a, a);
    }
    switch (rng.below(cfg.with_box ? 4 : 3)) {
      case 0:
        return Formula::impl(any_formula(size - 1), inhabited_formula(ctx, size - 1));
      case 1:
        return Formula::conj(inhabited_formula(ctx, size - 1),
                             inhabited_formula(ctx, size - 1));
      case 2: {
        FormulaPtr inh = inhabited_formula(ctx, size - 1);
        FormulaPtr other = any_formula(size - 1);
        return rng.chance(50) ? Formula::disj(inh, other) : Formula::disj(other, inh);
      }
      default:
        return Formula::box(inhabited_formula(ctx, size - 1));
    }
  }

  std::optional<TermPtr> witness(const Context& ctx, const FormulaPtr& goal, int depth) {
    for (const auto& [n, f] : ctx.bindings())
      if (equal(f, goal)) return Term::var(n);
    if (depth < 0) return std::nullopt;
    switch (goal->kind()) {
      case FKind::Impl: {
        std::string x = fresh_var();
        auto b = witness(ctx.extended(x, goal->lhs()), goal->rhs(), depth);
        if (!b) return std::nullopt;
        return Term::lam(x, goal->lhs(), *b);
      }
      case FKind::Conj: {
        auto a = witness(ctx, goal->lhs(), depth);
        auto b = witness(ctx, goal->rhs(), depth);
        if (!a || !b) return std::nullopt;
        return Term::pair(*a, *b);
      }
      case FKind::Disj: {
        if (auto a = witness(ctx, goal->lhs(), depth - 1))
          return Term::inj(1, goal, *a);
        if (auto b = witness(ctx, goal->rhs(), depth - 1))
          return Term::inj(2, goal, *b);
        return std::nullopt;
      }
      case FKind::Box: {
        auto b = witness(ctx, goal->body(), depth);
        if (!b) return std::nullopt;
        return Term::box({}, {}, *b);
      }
      case FKind::Bot:
        return spine(ctx, goal, depth);
      default:
        return spine(ctx, goal, depth);
    }
  }

  // Elimination chain from a hypothesis toward the goal.
  std::optional<TermPtr> spine(const Context& ctx, const FormulaPtr& goal, int depth) {
    std::vector<std::pair<std::string, FormulaPtr>> hyps(ctx.bindings().begin(),
                                                         ctx.bindings().end());
    std::shuffle(hyps.begin(), hyps.end(), rng.eng);
    for (const auto& [name, f] : hyps)
      if (auto t = unwind(ctx, Term::var(name), f, goal, depth)) return t;
    return std::nullopt;
  }

  std::optional<TermPtr> unwind(const Context& ctx, TermPtr head, const FormulaPtr& f,
                                const FormulaPtr& goal, int depth) {
    if (equal(f, goal)) return head;
    if (depth <= 0) return std::nullopt;
    switch (f->kind()) {
      case FKind::Impl: {
        auto arg = witness(ctx, f->lhs(), depth - 1);
        if (!arg) return std::nullopt;
        return unwind(ctx, Term::app(head, *arg), f->rhs(), goal, depth - 1);
      }
      case FKind::Conj: {
        if (auto t = unwind(ctx, Term::proj(1, head), f->lhs(), goal, depth - 1)) return t;
        return unwind(ctx, Term::proj(2, head), f->rhs(), goal, depth - 1);
      }
      case FKind::Bot:
        return Term::efq(goal, head);
      case FKind::Disj: {
        std::string x = fresh_var(), y = fresh_var();
        auto l = witness(ctx.extended(x, f->lhs()), goal, depth - 1);
        auto r = witness(ctx.extended(y, f->rhs()), goal, depth - 1);
        if (!l || !r) return std::nullopt;
        return Term::case_of(head, x, *l, y, *r);
      }
      default:
        return std::nullopt;
    }
  }

  TermPtr must(const Context& ctx, const FormulaPtr& goal) {
    if (auto w = witness(ctx, goal, 4)) return *w;
    throw std::logic_error("generator invariant: goal not witnessable: " + print_formula(goal));
  }

  std::optional<TermPtr> bot_spine(const Context& ctx) { return spine(ctx, Formula::bot(), 3); }

  TermPtr gen(const Context& ctx, const FormulaPtr& goal, int depth) {
    if (depth <= 0) return must(ctx, goal);
    if (rng.chance(12)) {
      if (auto s = spine(ctx, goal, 3)) return *s;
    }
    if (rng.chance(cfg.redex_pct)) {
      if (auto t = plant_redex(ctx, goal, depth)) return *t;
    }
    switch (goal->kind()) {
      case FKind::Impl: {
        std::string x = fresh_var();
        Context inner = ctx.extended(x, goal->lhs());
        if (witness(inner, goal->rhs(), 3))
          return Term::lam(x, goal->lhs(), gen(inner, goal->rhs(), depth - 1));
        return must(ctx, goal);
      }
      case FKind::Conj:
        if (witness(ctx, goal->lhs(), 3) && witness(ctx, goal->rhs(), 3))
          return Term::pair(gen(ctx, goal->lhs(), depth - 1), gen(ctx, goal->rhs(), depth - 1));
        return must(ctx, goal);
      case FKind::Disj: {
        bool left_ok = witness(ctx, goal->lhs(), 3).has_value();
        bool right_ok = witness(ctx, goal->rhs(), 3).has_value();
        if (left_ok && (!right_ok || rng.chance(50)))
          return Term::inj(1, goal, gen(ctx, goal->lhs(), depth - 1));
        if (right_ok) return Term::inj(2, goal, gen(ctx, goal->rhs(), depth - 1));
        return must(ctx, goal);
      }
      case FKind::Box: {
        if (!witness(ctx, goal->body(), 3)) return must(ctx, goal);
        int n = rng.below(3);
        std::vector<BoxBinder> binders;
        std::vector<TermPtr> args;
        Context inner = ctx;
        for (int i = 0; i < n; ++i) {
          FormulaPtr a = inhabited_formula(ctx, 1);
          std::string x = fresh_var();
          binders.push_back({x, a});
          args.push_back(gen(ctx, Formula::box(a), depth - 1));
          inner.bind(x, a);
        }
        return Term::box(std::move(binders), std::move(args),
                         gen(inner, goal->body(), depth - 1));
      }
      default:
        if (auto s = spine(ctx, goal, 3)) return *s;
        return must(ctx, goal);
    }
  }

  std::optional<TermPtr> plant_redex(const Context& ctx, const FormulaPtr& goal, int depth) {
    int pick = rng.below(cfg.with_bot ? 10 : 6);
    switch (pick) {
      case 0: {  // D1: beta redex
        FormulaPtr x = inhabited_formula(ctx, 1);
        std::string v = fresh_var();
        return Term::app(Term::lam(v, x, gen(ctx.extended(v, x), goal, depth - 1)),
                         gen(ctx, x, depth - 1));
      }
      case 1: {  // D2: projection of a pair
        FormulaPtr other = inhabited_formula(ctx, 1);
        if (rng.chance(50))
          return Term::proj(1, Term::pair(gen(ctx, goal, depth - 1), gen(ctx, other, depth - 1)));
        return Term::proj(2, Term::pair(gen(ctx, other, depth - 1), gen(ctx, goal, depth - 1)));
      }
      case 2: {  // D3: case on an injection
        FormulaPtr a = inhabited_formula(ctx, 1), b = inhabited_formula(ctx, 1);
        FormulaPtr d = Formula::disj(a, b);
        int side = 1 + rng.below(2);
        TermPtr scrut = Term::inj(side, d, gen(ctx, side == 1 ? a : b, depth - 1));
        std::string x = fresh_var(), y = fresh_var();
        return Term::case_of(scrut, x, gen(ctx.extended(x, a), goal, depth - 1), y,
                             gen(ctx.extended(y, b), goal, depth - 1));
      }
      case 3: {  // P1 / P2 / P3: case under an elimination
        FormulaPtr a = inhabited_formula(ctx, 1), b = inhabited_formula(ctx, 1);
        FormulaPtr d = Formula::disj(a, b);
        std::string x = fresh_var(), y = fresh_var();
        int shape = rng.below(3);
        if (shape == 0) {  // P1
          FormulaPtr arg_ty = inhabited_formula(ctx, 1);
          FormulaPtr fn = Formula::impl(arg_ty, goal);
          TermPtr c = Term::case_of(gen(ctx, d, depth - 1), x,
                                    gen(ctx.extended(x, a), fn, depth - 1), y,
                                    gen(ctx.extended(y, b), fn, depth - 1));
          return Term::app(c, gen(ctx, arg_ty, depth - 1));
        }
        if (shape == 1) {  // P2
          FormulaPtr other = inhabited_formula(ctx, 1);
          FormulaPtr pr = Formula::conj(goal, other);
          TermPtr c = Term::case_of(gen(ctx, d, depth - 1), x,
                                    gen(ctx.extended(x, a), pr, depth - 1), y,
                                    gen(ctx.extended(y, b), pr, depth - 1));
          return Term::proj(1, c);
        }
        // P3: case whose scrutinee is a case
        FormulaPtr a2 = inhabited_formula(ctx, 1), b2 = inhabited_formula(ctx, 1);
        FormulaPtr d2 = Formula::disj(a2, b2);
        TermPtr inner = Term::case_of(gen(ctx, d, depth - 1), x,
                                      gen(ctx.extended(x, a), d2, depth - 1), y,
                                      gen(ctx.extended(y, b), d2, depth - 1));
        std::string u = fresh_var(), v = fresh_var();
        return Term::case_of(inner, u, gen(ctx.extended(u, a2), goal, depth - 1), v,
                             gen(ctx.extended(v, b2), goal, depth - 1));
      }
      case 4: {  // box shapes: D4 / D5 / P4 when the goal is boxed
        if (goal->kind() != FKind::Box || !cfg.with_box) return std::nullopt;
        int shape = rng.below(3);
        if (shape == 0) {  // D4: box argument is a box
          FormulaPtr a = inhabited_formula(ctx, 1);
          TermPtr inner_box = Term::box({}, {}, gen(ctx, a, depth - 1));
          std::string x = fresh_var();
          return Term::box({{x, a}}, {inner_box},
                           gen(ctx.extended(x, a), goal->body(), depth - 1));
        }
        if (shape == 1) {  // D5: identity box
          std::string u = fresh_var();
          return Term::box({{u, goal->body()}}, {gen(ctx, goal, depth - 1)}, Term::var(u));
        }
        // P4: case in a box argument
        FormulaPtr a = inhabited_formula(ctx, 1);
        FormulaPtr s1 = inhabited_formula(ctx, 1), s2 = inhabited_formula(ctx, 1);
        FormulaPtr d = Formula::disj(s1, s2);
        std::string x = fresh_var(), y = fresh_var(), u = fresh_var();
        TermPtr c = Term::case_of(gen(ctx, d, depth - 1), x,
                                  gen(ctx.extended(x, s1), Formula::box(a), depth - 1), y,
                                  gen(ctx.extended(y, s2), Formula::box(a), depth - 1));
        return Term::box({{u, a}}, {c}, gen(ctx.extended(u, a), goal->body(), depth - 1));
      }
      case 5: {  // B1: efq applied
        auto e = bot_spine(ctx);
        if (!e) return std::nullopt;
        FormulaPtr x = inhabited_formula(ctx, 1);
        return Term::app(Term::efq(Formula::impl(x, goal), *e), gen(ctx, x, depth - 1));
      }
      case 6: {  // B2 / B3
        auto e = bot_spine(ctx);
        if (!e) return std::nullopt;
        if (rng.chance(50)) {
          FormulaPtr other = any_formula(1);
          return Term::proj(1, Term::efq(Formula::conj(goal, other), *e));
        }
        FormulaPtr a = inhabited_formula(ctx, 1), b = inhabited_formula(ctx, 1);
        std::string x = fresh_var(), y = fresh_var();
        return Term::case_of(Term::efq(Formula::disj(a, b), *e), x,
                             gen(ctx.extended(x, a), goal, depth - 1), y,
                             gen(ctx.extended(y, b), goal, depth - 1));
      }
      case 7: {  // B4: efq of an efq
        auto e = bot_spine(ctx);
        if (!e) return std::nullopt;
        return Term::efq(goal, Term::efq(Formula::bot(), *e));
      }
      case 8: {  // B5: efq in a box argument
        if (goal->kind() != FKind::Box || !cfg.with_box) return std::nullopt;
        auto e = bot_spine(ctx);
        if (!e) return std::nullopt;
        FormulaPtr a = inhabited_formula(ctx, 1);
        std::string u = fresh_var();
        return Term::box({{u, a}}, {Term::efq(Formula::box(a), *e)},
                         gen(ctx.extended(u, a), goal->body(), depth - 1));
      }
      case 9: {  // PBot: efq over a case with bottom branches
        FormulaPtr a = inhabited_formula(ctx, 1), b = inhabited_formula(ctx, 1);
        std::string x = fresh_var(), y = fresh_var();
        auto l = bot_spine(ctx.extended(x, a));
        auto r = bot_spine(ctx.extended(y, b));
        if (!l || !r) return std::nullopt;
        TermPtr c = Term::case_of(gen(ctx, Formula::disj(a, b), depth - 1), x, *l, y, *r);
        return Term::efq(goal, c);
      }
      default:
        return std::nullopt;
    }
  }
};

}  // namespace

TermPtr gen_untyped_term(Rng& rng, int budget) {
  UntypedGen g{rng};
  return g.gen(budget);
}

TypedSample gen_typed_term(Rng& rng, const TypedGenConfig& cfg) {
  TypedGen g{rng, cfg};
  TypedSample out;
  if (!cfg.closed) {
    int nhyps = 2 + rng.below(3);
    for (int i = 0; i < nhyps; ++i)
      out.ctx.bind("h" + std::to_string(i + 1), g.any_formula(2));
    if (cfg.with_bot) {
      out.ctx.bind("bb", Formula::bot());
      if (rng.chance(50))
        out.ctx.bind("bf", Formula::impl(g.any_formula(1), Formula::bot()));
    }
  }
  FormulaPtr goal = g.inhabited_formula(out.ctx, cfg.goal_size);
  out.term = g.gen(out.ctx, goal, cfg.depth);
  out.type = infer(out.ctx, out.term);
  return out;
}

std::optional<TermPtr> gen_term_for_goal(Rng& rng, const TypedGenConfig& cfg, const Context& ctx,
                                         const FormulaPtr& goal) {
  TypedGen g{rng, cfg};
  if (!g.witness(ctx, goal, 3)) return std::nullopt;
  return g.gen(ctx, goal, cfg.depth);
}

}  // namespace iel
