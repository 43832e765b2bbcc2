#include "iel/cps.hpp"

namespace iel {

SimpleTypePtr cps_circ(const FormulaPtr& f) {
  switch (f->kind()) {
    case FKind::Atom:
      if (f->atom_name() == "q") throw CpsError("the atom q is reserved for the CPS target");
      return SimpleType::atom(f->atom_name());
    case FKind::Impl:
      return SimpleType::arrow(neg_type(f->lhs()), neg_type(f->rhs()));
    case FKind::Conj:
      return SimpleType::neg(
          SimpleType::arrow(neg_type(f->lhs()), SimpleType::neg(neg_type(f->rhs()))));
    case FKind::Disj:
      return SimpleType::arrow(SimpleType::neg(neg_type(f->lhs())),
                               SimpleType::neg(SimpleType::neg(neg_type(f->rhs()))));
    case FKind::Box:
      return SimpleType::neg(SimpleType::neg(cps_circ(f->body())));
    case FKind::Bot:
    case FKind::Top:
      throw CpsError("the CPS translation covers the bottom/top-free fragment only");
  }
  throw std::logic_error("unreachable");
}

SimpleTypePtr neg_type(const FormulaPtr& f) {
  return SimpleType::neg(SimpleType::neg(cps_circ(f)));
}

SttContext translate_context(const Context& ctx) {
  SttContext out;
  for (const auto& [name, f] : ctx.bindings()) out[name] = neg_type(f);
  return out;
}

namespace {

void collect_names(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case TKind::Var:
      out.insert(t->name());
      break;
    case TKind::Lam:
      out.insert(t->name());
      break;
    case TKind::Case:
      out.insert(t->name());
      out.insert(t->name2());
      break;
    case TKind::Box:
      for (const auto& b : t->binders()) out.insert(b.name);
      break;
    default: break;
  }
  for (const auto& k : t->children()) collect_names(k, out);
}

void collect_stt_names(const SttTermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case SttKind::Var:
      out.insert(t->name());
      break;
    case SttKind::Lam:
      out.insert(t->name());
      collect_stt_names(t->body(), out);
      break;
    case SttKind::App:
      collect_stt_names(t->fun(), out);
      collect_stt_names(t->arg(), out);
      break;
  }
}

struct Translator {
  bool annotate = false;
  std::set<std::string> used;

  std::string fresh(const std::string& base) {
    std::string name = base;
    for (int i = 1; used.count(name); ++i) name = base + std::to_string(i);
    used.insert(name);
    return name;
  }

  std::optional<SimpleTypePtr> ann_neg(const Context& ctx, const TermPtr& t) {
    if (!annotate) return std::nullopt;
    return SimpleType::neg(cps_circ(infer(ctx, t)));  // ~A|, the continuation type
  }
  std::optional<SimpleTypePtr> bar(const FormulaPtr& f) {
    if (!annotate) return std::nullopt;
    return neg_type(f);
  }
  std::optional<SimpleTypePtr> circ(const FormulaPtr& f) {
    if (!annotate) return std::nullopt;
    return cps_circ(f);
  }
  std::optional<SimpleTypePtr> neg_bar(const FormulaPtr& f) {
    if (!annotate) return std::nullopt;
    return SimpleType::neg(neg_type(f));
  }

  FormulaPtr ty(const Context& ctx, const TermPtr& t) {
    return annotate ? infer(ctx, t) : nullptr;
  }

  // Renames box binders (inside the body) away from the free variables of the
  // arguments and the given extra set; binders scope over later argument
  // images in the translated nesting.
  void freshen_box(const TermPtr& t, const std::set<std::string>& extra,
                   std::vector<BoxBinder>& binders, TermPtr& body) {
    binders = t->binders();
    body = t->body();
    std::set<std::string> avoid = extra;
    for (size_t j = 0; j < t->box_arity(); ++j)
      for (const auto& v : free_vars(t->box_arg(j))) avoid.insert(v);
    for (auto& b : binders) {
      if (avoid.count(b.name)) {
        std::set<std::string> a2 = avoid;
        for (const auto& v : free_vars(body)) a2.insert(v);
        for (const auto& o : binders) a2.insert(o.name);
        for (const auto& u : used) a2.insert(u);
        std::string nb = fresh_name(b.name, a2);
        used.insert(nb);
        body = subst(body, b.name, Term::var(nb));
        b.name = nb;
      }
      avoid.insert(b.name);
    }
  }

  SttTermPtr overline(const Context& ctx, const TermPtr& t) {
    switch (t->kind()) {
      case TKind::Var: {
        std::string k = fresh("k");
        return SttTerm::lam(k, ann_neg(ctx, t),
                            SttTerm::app(SttTerm::var(t->name()), SttTerm::var(k)));
      }
      case TKind::Lam: {
        std::string k = fresh("k");
        SttTermPtr inner = SttTerm::lam(t->name(), bar(t->ann()),
                                        overline(ctx.extended(t->name(), t->ann()), t->body()));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(SttTerm::var(k), inner));
      }
      case TKind::App: {
        std::string k = fresh("k");
        std::string m = fresh("m");
        SttTermPtr f = overline(ctx, t->fun());
        SttTermPtr a = overline(ctx, t->arg());
        std::optional<SimpleTypePtr> mty;
        if (annotate) mty = cps_circ(infer(ctx, t->fun()));
        SttTermPtr cont = SttTerm::lam(
            m, mty, SttTerm::app(SttTerm::app(SttTerm::var(m), a), SttTerm::var(k)));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(f, cont));
      }
      case TKind::Pair: {
        std::string k = fresh("k");
        std::string u = fresh("u");
        SttTermPtr a = overline(ctx, t->fst());
        SttTermPtr b = overline(ctx, t->snd());
        std::optional<SimpleTypePtr> uty;
        if (annotate)
          uty = SimpleType::arrow(neg_type(infer(ctx, t->fst())),
                                  SimpleType::neg(neg_type(infer(ctx, t->snd()))));
        SttTermPtr inner =
            SttTerm::lam(u, uty, SttTerm::app(SttTerm::app(SttTerm::var(u), a), b));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(SttTerm::var(k), inner));
      }
      case TKind::Proj: {
        std::string k = fresh("k");
        std::string u = fresh("u");
        std::string i = fresh("i");
        std::string j = fresh("j");
        SttTermPtr e = overline(ctx, t->arg());
        std::optional<SimpleTypePtr> uty, ity, jty;
        if (annotate) {
          FormulaPtr conj = infer(ctx, t->arg());
          uty = cps_circ(conj);
          ity = neg_type(conj->lhs());
          jty = neg_type(conj->rhs());
        }
        SttTermPtr pick = SttTerm::app(SttTerm::var(t->index() == 1 ? i : j), SttTerm::var(k));
        SttTermPtr sel = SttTerm::lam(i, ity, SttTerm::lam(j, jty, pick));
        SttTermPtr cont = SttTerm::lam(u, uty, SttTerm::app(SttTerm::var(u), sel));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(e, cont));
      }
      case TKind::Inj: {
        std::string k = fresh("k");
        std::string i = fresh("i");
        std::string j = fresh("j");
        SttTermPtr a = overline(ctx, t->arg());
        std::optional<SimpleTypePtr> ity, jty;
        if (annotate) {
          ity = SimpleType::neg(neg_type(t->ann()->lhs()));
          jty = SimpleType::neg(neg_type(t->ann()->rhs()));
        }
        SttTermPtr body = SttTerm::app(SttTerm::var(t->index() == 1 ? i : j), a);
        SttTermPtr inner = SttTerm::lam(i, ity, SttTerm::lam(j, jty, body));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(SttTerm::var(k), inner));
      }
      case TKind::Case: {
        std::string k = fresh("k");
        std::string m = fresh("m");
        SttTermPtr s = overline(ctx, t->scrut());
        std::optional<SimpleTypePtr> mty, xty, yty;
        Context lctx = ctx, rctx = ctx;
        if (annotate) {
          FormulaPtr disj = infer(ctx, t->scrut());
          mty = cps_circ(disj);
          xty = neg_type(disj->lhs());
          yty = neg_type(disj->rhs());
          lctx = ctx.extended(t->name(), disj->lhs());
          rctx = ctx.extended(t->name2(), disj->rhs());
        }
        SttTermPtr lb = SttTerm::lam(
            t->name(), xty, SttTerm::app(overline(lctx, t->left()), SttTerm::var(k)));
        SttTermPtr rb = SttTerm::lam(
            t->name2(), yty, SttTerm::app(overline(rctx, t->right()), SttTerm::var(k)));
        SttTermPtr cont = SttTerm::lam(
            m, mty, SttTerm::app(SttTerm::app(SttTerm::var(m), lb), rb));
        return SttTerm::lam(k, ann_neg(ctx, t), SttTerm::app(s, cont));
      }
      case TKind::Box: {
        std::string k = fresh("k");
        std::vector<BoxBinder> binders;
        TermPtr body;
        freshen_box(t, {k}, binders, body);
        Context inner_ctx = ctx;
        std::vector<std::optional<SimpleTypePtr>> bty(binders.size());
        if (annotate) {
          for (size_t i = 0; i < binders.size(); ++i) {
            FormulaPtr at = infer(ctx, t->box_arg(i));
            bty[i] = neg_type(at->body());
            inner_ctx.bind(binders[i].name, at->body());
          }
        }
        SttTermPtr acc = SttTerm::app(SttTerm::var(k), overline(inner_ctx, body));
        for (size_t i = binders.size(); i-- > 0;) {
          SttTermPtr cont = SttTerm::lam(binders[i].name, bty[i], acc);
          acc = SttTerm::app(overline(ctx, t->box_arg(i)), cont);
        }
        return SttTerm::lam(k, ann_neg(ctx, t), acc);
      }
      case TKind::Efq:
      case TKind::Unit:
        throw CpsError("the CPS translation covers the efq/unit-free fragment only");
    }
    throw std::logic_error("unreachable");
  }

  SttTermPtr modified(const Context& ctx, const TermPtr& t) {
    std::string k = fresh("k");
    return SttTerm::lam(k, ann_neg(ctx, t), colon_op(ctx, t, SttTerm::var(k)));
  }

  SttTermPtr colon_op(const Context& ctx, const TermPtr& t, const SttTermPtr& r) {
    std::set<std::string> rfv = stt_free_vars(r);
    switch (t->kind()) {
      case TKind::Var:
        return SttTerm::app(SttTerm::var(t->name()), r);
      case TKind::Lam: {
        auto [x, body] = rename_binder(t->name(), t->body(), rfv);
        SttTermPtr inner =
            SttTerm::lam(x, bar(t->ann()), modified(ctx.extended(x, t->ann()), body));
        return SttTerm::app(r, inner);
      }
      case TKind::App: {
        std::string m = fresh("m");
        std::optional<SimpleTypePtr> mty;
        if (annotate) mty = cps_circ(infer(ctx, t->fun()));
        SttTermPtr cont = SttTerm::lam(
            m, mty,
            SttTerm::app(SttTerm::app(SttTerm::var(m), modified(ctx, t->arg())), r));
        return colon_op(ctx, t->fun(), cont);
      }
      case TKind::Pair: {
        std::string u = fresh("u");
        std::optional<SimpleTypePtr> uty;
        if (annotate)
          uty = SimpleType::arrow(neg_type(infer(ctx, t->fst())),
                                  SimpleType::neg(neg_type(infer(ctx, t->snd()))));
        SttTermPtr inner = SttTerm::lam(
            u, uty,
            SttTerm::app(SttTerm::app(SttTerm::var(u), modified(ctx, t->fst())),
                         modified(ctx, t->snd())));
        return SttTerm::app(r, inner);
      }
      case TKind::Proj: {
        std::string u = fresh("u");
        std::string i = fresh("i");
        std::string j = fresh("j");
        std::optional<SimpleTypePtr> uty, ity, jty;
        if (annotate) {
          FormulaPtr conj = infer(ctx, t->arg());
          uty = cps_circ(conj);
          ity = neg_type(conj->lhs());
          jty = neg_type(conj->rhs());
        }
        SttTermPtr pick = SttTerm::app(SttTerm::var(t->index() == 1 ? i : j), r);
        SttTermPtr sel = SttTerm::lam(i, ity, SttTerm::lam(j, jty, pick));
        SttTermPtr cont = SttTerm::lam(u, uty, SttTerm::app(SttTerm::var(u), sel));
        return colon_op(ctx, t->arg(), cont);
      }
      case TKind::Inj: {
        std::string i = fresh("i");
        std::string j = fresh("j");
        std::optional<SimpleTypePtr> ity, jty;
        if (annotate) {
          ity = SimpleType::neg(neg_type(t->ann()->lhs()));
          jty = SimpleType::neg(neg_type(t->ann()->rhs()));
        }
        SttTermPtr body =
            SttTerm::app(SttTerm::var(t->index() == 1 ? i : j), modified(ctx, t->arg()));
        return SttTerm::app(r, SttTerm::lam(i, ity, SttTerm::lam(j, jty, body)));
      }
      case TKind::Case: {
        std::string m = fresh("m");
        std::optional<SimpleTypePtr> mty, xty, yty;
        FormulaPtr lf, rf;
        if (annotate) {
          FormulaPtr disj = infer(ctx, t->scrut());
          mty = cps_circ(disj);
          xty = neg_type(disj->lhs());
          yty = neg_type(disj->rhs());
          lf = disj->lhs();
          rf = disj->rhs();
        }
        auto [x, lbody] = rename_binder(t->name(), t->left(), rfv);
        auto [y, rbody] = rename_binder(t->name2(), t->right(), rfv);
        Context lctx = annotate ? ctx.extended(x, lf) : ctx;
        Context rctx = annotate ? ctx.extended(y, rf) : ctx;
        SttTermPtr lb = SttTerm::lam(x, xty, colon_op(lctx, lbody, r));
        SttTermPtr rb = SttTerm::lam(y, yty, colon_op(rctx, rbody, r));
        SttTermPtr cont =
            SttTerm::lam(m, mty, SttTerm::app(SttTerm::app(SttTerm::var(m), lb), rb));
        return colon_op(ctx, t->scrut(), cont);
      }
      case TKind::Box: {
        std::vector<BoxBinder> binders;
        TermPtr body;
        freshen_box(t, rfv, binders, body);
        Context inner_ctx = ctx;
        std::vector<std::optional<SimpleTypePtr>> bty(binders.size());
        if (annotate) {
          for (size_t i = 0; i < binders.size(); ++i) {
            FormulaPtr at = infer(ctx, t->box_arg(i));
            bty[i] = neg_type(at->body());
            inner_ctx.bind(binders[i].name, at->body());
          }
        }
        SttTermPtr acc = SttTerm::app(r, modified(inner_ctx, body));
        for (size_t i = binders.size(); i-- > 0;)
          acc = colon_op(ctx, t->box_arg(i), SttTerm::lam(binders[i].name, bty[i], acc));
        return acc;
      }
      case TKind::Efq:
      case TKind::Unit:
        throw CpsError("the modified CPS translation covers the efq/unit-free fragment only");
    }
    throw std::logic_error("unreachable");
  }

  // Renames a source binder (inside its scope) away from the free variables
  // of the continuation term, per the freshness side condition.
  std::pair<std::string, TermPtr> rename_binder(const std::string& name, TermPtr scope,
                                                const std::set<std::string>& rfv) {
    if (!rfv.count(name)) return {name, std::move(scope)};
    std::set<std::string> avoid = rfv;
    for (const auto& v : free_vars(scope)) avoid.insert(v);
    for (const auto& u : used) avoid.insert(u);
    std::string fresh_nm = fresh_name(name, avoid);
    used.insert(fresh_nm);
    return {fresh_nm, subst(scope, name, Term::var(fresh_nm))};
  }
};

Translator make_translator(const TermPtr& t, const Context& ctx, const SttTermPtr& r = nullptr) {
  Translator tr;
  tr.annotate = infer_opt(ctx, t).has_value();
  collect_names(t, tr.used);
  for (const auto& [name, f] : ctx.bindings()) tr.used.insert(name);
  if (r) collect_stt_names(r, tr.used);
  return tr;
}

}  // namespace

SttTermPtr cps(const TermPtr& t, const Context& ctx) {
  Translator tr = make_translator(t, ctx);
  return tr.overline(ctx, t);
}

SttTermPtr colon(const TermPtr& t, const SttTermPtr& r, const Context& ctx) {
  Translator tr = make_translator(t, ctx, r);
  return tr.colon_op(ctx, t, r);
}

SttTermPtr cps_mod(const TermPtr& t, const Context& ctx) {
  Translator tr = make_translator(t, ctx);
  return tr.modified(ctx, t);
}

}  // namespace iel
