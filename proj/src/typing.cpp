#include "iel/typing.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace iel {

namespace {

std::string path_str(const Path& p) {
  std::string s = "[";
  for (size_t i = 0; i < p.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(p[i]);
  }
  return s + "]";
}

}  // namespace

TypeError::TypeError(Path p, FormulaPtr exp, FormulaPtr fnd, const std::string& d)
    : std::runtime_error(path_str(p) + ": " +
                         (exp && fnd ? "expected " + print_formula(exp) + ", found " + print_formula(fnd)
                                     : d)),
      path(std::move(p)),
      expected(std::move(exp)),
      found(std::move(fnd)),
      detail(d) {}

std::string TypeError::render() const { return what(); }

std::string TypeError::to_json() const {
  nlohmann::json j;
  j["path"] = path;
  j["expected"] = expected ? print_formula(expected) : nullptr;
  j["found"] = found ? print_formula(found) : nullptr;
  if (!detail.empty()) j["detail"] = detail;
  return j.dump();
}

namespace {

// Core checker; when collect is non-null every node type is recorded.
FormulaPtr infer_rec(const Context& ctx, const TermPtr& t, Path& path,
                     std::vector<FormulaPtr>* collect) {
  auto into = [&](int i, const Context& c, const TermPtr& sub) {
    path.push_back(i);
    FormulaPtr f = infer_rec(c, sub, path, collect);
    path.pop_back();
    return f;
  };
  FormulaPtr result;
  switch (t->kind()) {
    case TKind::Var: {
      const FormulaPtr* f = ctx.lookup(t->name());
      if (!f) throw TypeError(path, nullptr, nullptr, "unbound variable " + t->name());
      result = *f;
      break;
    }
    case TKind::Lam: {
      FormulaPtr b = into(0, ctx.extended(t->name(), t->ann()), t->body());
      result = Formula::impl(t->ann(), b);
      break;
    }
    case TKind::App: {
      FormulaPtr f = into(0, ctx, t->fun());
      FormulaPtr a = into(1, ctx, t->arg());
      if (f->kind() != FKind::Impl) {
        path.push_back(0);
        TypeError e(path, nullptr, f, "applied term is not an implication, found " + print_formula(f));
        path.pop_back();
        throw e;
      }
      if (!equal(f->lhs(), a)) {
        path.push_back(1);
        TypeError e(path, f->lhs(), a, "");
        path.pop_back();
        throw e;
      }
      result = f->rhs();
      break;
    }
    case TKind::Pair: {
      result = Formula::conj(into(0, ctx, t->fst()), into(1, ctx, t->snd()));
      break;
    }
    case TKind::Proj: {
      FormulaPtr a = into(0, ctx, t->arg());
      if (a->kind() != FKind::Conj) {
        path.push_back(0);
        TypeError e(path, nullptr, a, "projection of a non-conjunction, found " + print_formula(a));
        path.pop_back();
        throw e;
      }
      result = t->index() == 1 ? a->lhs() : a->rhs();
      break;
    }
    case TKind::Inj: {
      if (t->ann()->kind() != FKind::Disj)
        throw TypeError(path, nullptr, t->ann(),
                        "injection annotation is not a disjunction: " + print_formula(t->ann()));
      FormulaPtr want = t->index() == 1 ? t->ann()->lhs() : t->ann()->rhs();
      FormulaPtr a = into(0, ctx, t->arg());
      if (!equal(want, a)) {
        path.push_back(0);
        TypeError e(path, want, a, "");
        path.pop_back();
        throw e;
      }
      result = t->ann();
      break;
    }
    case TKind::Case: {
      FormulaPtr s = into(0, ctx, t->scrut());
      if (s->kind() != FKind::Disj) {
        path.push_back(0);
        TypeError e(path, nullptr, s, "case scrutinee is not a disjunction, found " + print_formula(s));
        path.pop_back();
        throw e;
      }
      FormulaPtr l = into(1, ctx.extended(t->name(), s->lhs()), t->left());
      FormulaPtr r = into(2, ctx.extended(t->name2(), s->rhs()), t->right());
      if (!equal(l, r)) {
        path.push_back(2);
        TypeError e(path, l, r, "");
        path.pop_back();
        throw e;
      }
      result = l;
      break;
    }
    case TKind::Efq: {
      FormulaPtr a = into(0, ctx, t->arg());
      if (a->kind() != FKind::Bot) {
        path.push_back(0);
        TypeError e(path, Formula::bot(), a, "");
        path.pop_back();
        throw e;
      }
      result = t->ann();
      break;
    }
    case TKind::Unit: {
      into(0, ctx, t->arg());
      result = Formula::top();
      break;
    }
    case TKind::Box: {
      Context inner = ctx;
      for (size_t i = 0; i < t->box_arity(); ++i) {
        FormulaPtr a = into(static_cast<int>(i), ctx, t->box_arg(i));
        if (a->kind() != FKind::Box) {
          path.push_back(static_cast<int>(i));
          TypeError e(path, nullptr, a,
                      "box argument must have a boxed type, found " + print_formula(a));
          path.pop_back();
          throw e;
        }
        if (t->binders()[i].ann && !equal(*t->binders()[i].ann, a->body())) {
          path.push_back(static_cast<int>(i));
          TypeError e(path, Formula::box(*t->binders()[i].ann), a, "");
          path.pop_back();
          throw e;
        }
        inner.bind(t->binders()[i].name, a->body());
      }
      FormulaPtr b = into(static_cast<int>(t->box_arity()), inner, t->body());
      result = Formula::box(b);
      break;
    }
    default:
      throw TypeError(path, nullptr, nullptr, "malformed term");
  }
  if (collect) collect->push_back(result);
  return result;
}

}  // namespace

FormulaPtr infer(const Context& ctx, const TermPtr& t) {
  Path path;
  return infer_rec(ctx, t, path, nullptr);
}

std::optional<FormulaPtr> infer_opt(const Context& ctx, const TermPtr& t) {
  try {
    return infer(ctx, t);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

bool check(const Context& ctx, const TermPtr& t, const FormulaPtr& f) {
  auto got = infer_opt(ctx, t);
  return got && equal(*got, f);
}

TermPtr resolve_annotations(const Context& ctx, const TermPtr& t) {
  switch (t->kind()) {
    case TKind::Var:
      return t;
    case TKind::Lam:
      return Term::lam(t->name(), t->ann(),
                       resolve_annotations(ctx.extended(t->name(), t->ann()), t->body()));
    case TKind::App:
      return Term::app(resolve_annotations(ctx, t->fun()), resolve_annotations(ctx, t->arg()));
    case TKind::Pair:
      return Term::pair(resolve_annotations(ctx, t->fst()), resolve_annotations(ctx, t->snd()));
    case TKind::Proj:
      return Term::proj(t->index(), resolve_annotations(ctx, t->arg()));
    case TKind::Inj:
      return Term::inj(t->index(), t->ann(), resolve_annotations(ctx, t->arg()));
    case TKind::Efq:
      return Term::efq(t->ann(), resolve_annotations(ctx, t->arg()));
    case TKind::Unit:
      return Term::unit(resolve_annotations(ctx, t->arg()));
    case TKind::Case: {
      TermPtr scrut = resolve_annotations(ctx, t->scrut());
      FormulaPtr s = infer(ctx, scrut);
      if (s->kind() != FKind::Disj)
        throw TypeError({}, nullptr, s, "case scrutinee is not a disjunction");
      return Term::case_of(scrut, t->name(),
                           resolve_annotations(ctx.extended(t->name(), s->lhs()), t->left()),
                           t->name2(),
                           resolve_annotations(ctx.extended(t->name2(), s->rhs()), t->right()));
    }
    case TKind::Box: {
      std::vector<BoxBinder> binders = t->binders();
      std::vector<TermPtr> args;
      Context inner = ctx;
      for (size_t i = 0; i < t->box_arity(); ++i) {
        args.push_back(resolve_annotations(ctx, t->box_arg(i)));
        FormulaPtr a = infer(ctx, args.back());
        if (a->kind() != FKind::Box)
          throw TypeError({}, nullptr, a, "box argument must have a boxed type");
        if (binders[i].ann && !equal(*binders[i].ann, a->body()))
          throw TypeError({}, Formula::box(*binders[i].ann), a, "");
        binders[i].ann = a->body();
        inner.bind(binders[i].name, a->body());
      }
      return Term::box(std::move(binders), std::move(args), resolve_annotations(inner, t->body()));
    }
  }
  throw std::logic_error("unreachable");
}

std::vector<FormulaPtr> derivation_formulas(const Context& ctx, const TermPtr& t) {
  std::vector<FormulaPtr> acc;
  Path path;
  infer_rec(ctx, t, path, &acc);
  std::sort(acc.begin(), acc.end(), FormulaLess{});
  acc.erase(std::unique(acc.begin(), acc.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
            acc.end());
  return acc;
}

// -- Hilbert side ------------------------------------------------------------

const std::vector<SchemeInfo>& axiom_catalogue() {
  static const std::vector<SchemeInfo> cat = {
      {"then-1", 2, "A -> B -> A"},
      {"then-2", 3, "(A -> B -> C) -> (A -> B) -> A -> C"},
      {"and-intro", 2, "A -> B -> A /\\ B"},
      {"and-elim1", 2, "A /\\ B -> A"},
      {"and-elim2", 2, "A /\\ B -> B"},
      {"or-intro1", 2, "A -> A \\/ B"},
      {"or-intro2", 2, "B -> A \\/ B"},
      {"or-elim", 3, "(A -> C) -> (B -> C) -> A \\/ B -> C"},
      {"ex-falso", 1, "bot -> A"},
      {"k-box", 2, "[](A -> B) -> []A -> []B"},
      {"coreflection", 1, "A -> []A"},
  };
  return cat;
}

namespace {

const SchemeInfo& find_scheme(const std::string& id, size_t nparts) {
  for (const auto& s : axiom_catalogue()) {
    if (s.id == id) {
      if (s.arity != nparts)
        throw std::invalid_argument("scheme " + id + " expects " + std::to_string(s.arity) +
                                    " formulas, got " + std::to_string(nparts));
      return s;
    }
  }
  throw std::invalid_argument("unknown axiom scheme: " + id);
}

}  // namespace

FormulaPtr axiom_instance(const std::string& scheme, const std::vector<FormulaPtr>& parts) {
  find_scheme(scheme, parts.size());
  auto F = [&](size_t i) { return parts[i]; };
  if (scheme == "then-1") return Formula::impl(F(0), Formula::impl(F(1), F(0)));
  if (scheme == "then-2")
    return Formula::impl(
        Formula::impl(F(0), Formula::impl(F(1), F(2))),
        Formula::impl(Formula::impl(F(0), F(1)), Formula::impl(F(0), F(2))));
  if (scheme == "and-intro")
    return Formula::impl(F(0), Formula::impl(F(1), Formula::conj(F(0), F(1))));
  if (scheme == "and-elim1") return Formula::impl(Formula::conj(F(0), F(1)), F(0));
  if (scheme == "and-elim2") return Formula::impl(Formula::conj(F(0), F(1)), F(1));
  if (scheme == "or-intro1") return Formula::impl(F(0), Formula::disj(F(0), F(1)));
  if (scheme == "or-intro2") return Formula::impl(F(1), Formula::disj(F(0), F(1)));
  if (scheme == "or-elim")
    return Formula::impl(
        Formula::impl(F(0), F(2)),
        Formula::impl(Formula::impl(F(1), F(2)),
                      Formula::impl(Formula::disj(F(0), F(1)), F(2))));
  if (scheme == "ex-falso") return Formula::impl(Formula::bot(), F(0));
  if (scheme == "k-box")
    return Formula::impl(Formula::box(Formula::impl(F(0), F(1))),
                         Formula::impl(Formula::box(F(0)), Formula::box(F(1))));
  if (scheme == "coreflection") return Formula::impl(F(0), Formula::box(F(0)));
  throw std::logic_error("unreachable");
}

TermPtr ipc_axiom_term(const std::string& scheme, const std::vector<FormulaPtr>& parts) {
  find_scheme(scheme, parts.size());
  auto F = [&](size_t i) { return parts[i]; };
  auto V = [](const char* n) { return Term::var(n); };
  if (scheme == "then-1")
    return Term::lam("a", F(0), Term::lam("b", F(1), V("a")));
  if (scheme == "then-2")
    return Term::lam(
        "f", Formula::impl(F(0), Formula::impl(F(1), F(2))),
        Term::lam("g", Formula::impl(F(0), F(1)),
                  Term::lam("a", F(0),
                            Term::app(Term::app(V("f"), V("a")), Term::app(V("g"), V("a"))))));
  if (scheme == "and-intro")
    return Term::lam("a", F(0), Term::lam("b", F(1), Term::pair(V("a"), V("b"))));
  if (scheme == "and-elim1")
    return Term::lam("c", Formula::conj(F(0), F(1)), Term::proj(1, V("c")));
  if (scheme == "and-elim2")
    return Term::lam("c", Formula::conj(F(0), F(1)), Term::proj(2, V("c")));
  if (scheme == "or-intro1")
    return Term::lam("a", F(0), Term::inj(1, Formula::disj(F(0), F(1)), V("a")));
  if (scheme == "or-intro2")
    return Term::lam("b", F(1), Term::inj(2, Formula::disj(F(0), F(1)), V("b")));
  if (scheme == "or-elim")
    return Term::lam(
        "f", Formula::impl(F(0), F(2)),
        Term::lam("g", Formula::impl(F(1), F(2)),
                  Term::lam("d", Formula::disj(F(0), F(1)),
                            Term::case_of(V("d"), "x", Term::app(V("f"), V("x")), "y",
                                          Term::app(V("g"), V("y"))))));
  if (scheme == "ex-falso")
    return Term::lam("b", Formula::bot(), Term::efq(F(0), V("b")));
  if (scheme == "k-box")
    return Term::lam(
        "f", Formula::box(Formula::impl(F(0), F(1))),
        Term::lam("a", Formula::box(F(0)),
                  Term::box({{"g", Formula::impl(F(0), F(1))}, {"u", F(0)}},
                            {V("f"), V("a")}, Term::app(V("g"), V("u")))));
  if (scheme == "coreflection")
    return Term::lam("x", F(0), Term::box({}, {}, V("x")));
  throw std::logic_error("unreachable");
}

NdProof hilbert_to_nd(const HilbertProof& proof) {
  if (proof.lines.empty()) throw std::invalid_argument("empty Hilbert proof");
  NdProof out;
  std::vector<TermPtr> terms;
  std::map<std::string, FormulaPtr> hyp_by_name;
  int next_hyp = 1;
  std::vector<std::pair<FormulaPtr, std::string>> hyp_names;
  for (size_t i = 0; i < proof.lines.size(); ++i) {
    const HilbertLine& ln = proof.lines[i];
    switch (ln.kind) {
      case HilbertLine::Kind::Axiom: {
        FormulaPtr inst = axiom_instance(ln.scheme, ln.parts);
        if (ln.formula && !equal(inst, ln.formula))
          throw std::invalid_argument("line " + std::to_string(i) +
                                      ": stated formula differs from axiom instance");
        terms.push_back(ipc_axiom_term(ln.scheme, ln.parts));
        break;
      }
      case HilbertLine::Kind::Hyp: {
        if (!ln.formula) throw std::invalid_argument("hypothesis line without formula");
        std::string name;
        for (const auto& [f, n] : hyp_names)
          if (equal(f, ln.formula)) name = n;
        if (name.empty()) {
          name = "h" + std::to_string(next_hyp++);
          hyp_names.emplace_back(ln.formula, name);
          out.hyps.bind(name, ln.formula);
        }
        terms.push_back(Term::var(name));
        break;
      }
      case HilbertLine::Kind::MP: {
        if (ln.impl_line >= i || ln.arg_line >= i)
          throw std::invalid_argument("MP line " + std::to_string(i) +
                                      " references a later or same line");
        terms.push_back(Term::app(terms[ln.impl_line], terms[ln.arg_line]));
        break;
      }
    }
  }
  out.term = terms.back();
  return out;
}

}  // namespace iel
