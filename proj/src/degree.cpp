#include "iel/degree.hpp"

namespace iel {

namespace {

DegreeReport rec(const TermPtr& t) {
  switch (t->kind()) {
    case TKind::Var:
      return {1, 1};
    case TKind::Lam: {
      DegreeReport b = rec(t->body());
      return {b.bar, 1};
    }
    case TKind::App: {
      DegreeReport f = rec(t->fun());
      DegreeReport a = rec(t->arg());
      return {f.bar + f.hash * a.bar, f.hash};
    }
    case TKind::Pair: {
      DegreeReport a = rec(t->fst());
      DegreeReport b = rec(t->snd());
      return {a.bar + b.bar, 1};
    }
    case TKind::Proj: {
      DegreeReport a = rec(t->arg());
      return {a.bar + a.hash, a.hash};
    }
    case TKind::Inj: {
      DegreeReport a = rec(t->arg());
      return {a.bar, 1};
    }
    case TKind::Case: {
      DegreeReport s = rec(t->scrut());
      DegreeReport l = rec(t->left());
      DegreeReport r = rec(t->right());
      return {s.bar + s.hash * (l.bar + r.bar), 2 * s.hash * (l.hash + r.hash)};
    }
    case TKind::Box: {
      DegreeReport b = rec(t->body());
      BigInt bar_prod = 1, hash_prod = 1;
      for (size_t i = 0; i < t->box_arity(); ++i) {
        DegreeReport a = rec(t->box_arg(i));
        bar_prod *= a.bar;
        hash_prod *= a.hash;
      }
      return {b.bar * bar_prod + hash_prod, b.hash * hash_prod};
    }
    case TKind::Efq:
      throw DegreeError("permutation degree is undefined on efq");
    case TKind::Unit:
      throw DegreeError("permutation degree is undefined on unit");
  }
  throw std::logic_error("unreachable");
}

}  // namespace

DegreeReport degree(const TermPtr& t) { return rec(t); }
BigInt bar_norm(const TermPtr& t) { return rec(t).bar; }
BigInt hash_norm(const TermPtr& t) { return rec(t).hash; }

}  // namespace iel
