#include "iel/term.hpp"

#include <map>
#include <stdexcept>

namespace iel {

TermPtr Term::var(std::string name) {
  Term* t = new Term(TKind::Var);
  t->name_ = std::move(name);
  return TermPtr(t);
}
TermPtr Term::lam(std::string name, FormulaPtr ann, TermPtr body) {
  Term* t = new Term(TKind::Lam);
  t->name_ = std::move(name);
  t->ann_ = std::move(ann);
  t->kids_ = {std::move(body)};
  return TermPtr(t);
}
TermPtr Term::app(TermPtr fun, TermPtr arg) {
  Term* t = new Term(TKind::App);
  t->kids_ = {std::move(fun), std::move(arg)};
  return TermPtr(t);
}
TermPtr Term::pair(TermPtr fst, TermPtr snd) {
  Term* t = new Term(TKind::Pair);
  t->kids_ = {std::move(fst), std::move(snd)};
  return TermPtr(t);
}
TermPtr Term::proj(int index, TermPtr arg) {
  if (index != 1 && index != 2) throw std::invalid_argument("projection index must be 1 or 2");
  Term* t = new Term(TKind::Proj);
  t->index_ = index;
  t->kids_ = {std::move(arg)};
  return TermPtr(t);
}
TermPtr Term::inj(int index, FormulaPtr disjunction, TermPtr arg) {
  if (index != 1 && index != 2) throw std::invalid_argument("injection index must be 1 or 2");
  Term* t = new Term(TKind::Inj);
  t->index_ = index;
  t->ann_ = std::move(disjunction);
  t->kids_ = {std::move(arg)};
  return TermPtr(t);
}
TermPtr Term::case_of(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right) {
  Term* t = new Term(TKind::Case);
  t->name_ = std::move(x);
  t->name2_ = std::move(y);
  t->kids_ = {std::move(scrut), std::move(left), std::move(right)};
  return TermPtr(t);
}
TermPtr Term::efq(FormulaPtr target, TermPtr arg) {
  Term* t = new Term(TKind::Efq);
  t->ann_ = std::move(target);
  t->kids_ = {std::move(arg)};
  return TermPtr(t);
}
TermPtr Term::unit(TermPtr arg) {
  Term* t = new Term(TKind::Unit);
  t->kids_ = {std::move(arg)};
  return TermPtr(t);
}
TermPtr Term::box(std::vector<BoxBinder> binders, std::vector<TermPtr> args, TermPtr body) {
  if (binders.size() != args.size())
    throw std::invalid_argument("box binder/argument arity mismatch");
  for (size_t i = 0; i < binders.size(); ++i)
    for (size_t j = i + 1; j < binders.size(); ++j)
      if (binders[i].name == binders[j].name)
        throw std::invalid_argument("box binder names must be pairwise distinct");
  Term* t = new Term(TKind::Box);
  t->binders_ = std::move(binders);
  t->kids_ = std::move(args);
  t->kids_.push_back(std::move(body));
  return TermPtr(t);
}

namespace {

void free_vars_rec(const TermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind()) {
    case TKind::Var:
      if (!bound.count(t->name())) out.insert(t->name());
      break;
    case TKind::Lam: {
      bool fresh = bound.insert(t->name()).second;
      free_vars_rec(t->body(), bound, out);
      if (fresh) bound.erase(t->name());
      break;
    }
    case TKind::Case: {
      free_vars_rec(t->scrut(), bound, out);
      bool f1 = bound.insert(t->name()).second;
      free_vars_rec(t->left(), bound, out);
      if (f1) bound.erase(t->name());
      bool f2 = bound.insert(t->name2()).second;
      free_vars_rec(t->right(), bound, out);
      if (f2) bound.erase(t->name2());
      break;
    }
    case TKind::Box: {
      for (size_t i = 0; i < t->box_arity(); ++i) free_vars_rec(t->box_arg(i), bound, out);
      std::vector<std::string> added;
      for (const auto& b : t->binders())
        if (bound.insert(b.name).second) added.push_back(b.name);
      free_vars_rec(t->body(), bound, out);
      for (const auto& n : added) bound.erase(n);
      break;
    }
    default:
      for (const auto& k : t->children()) free_vars_rec(k, bound, out);
      break;
  }
}

bool ann_eq(const std::optional<FormulaPtr>& a, const std::optional<FormulaPtr>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || equal(*a, *b);
}

using Env = std::map<std::string, int>;

bool alpha_rec(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb, int depth) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case TKind::Var: {
      auto ia = ea.find(a->name());
      auto ib = eb.find(b->name());
      if ((ia != ea.end()) != (ib != eb.end())) return false;
      if (ia != ea.end()) return ia->second == ib->second;
      return a->name() == b->name();
    }
    case TKind::Lam: {
      if (!equal(a->ann(), b->ann())) return false;
      Env sa = ea, sb = eb;
      sa[a->name()] = depth;
      sb[b->name()] = depth;
      return alpha_rec(a->body(), b->body(), sa, sb, depth + 1);
    }
    case TKind::App:
    case TKind::Pair:
    case TKind::Unit:
      for (size_t i = 0; i < a->children().size(); ++i)
        if (!alpha_rec(a->child(i), b->child(i), ea, eb, depth)) return false;
      return true;
    case TKind::Proj:
      return a->index() == b->index() && alpha_rec(a->arg(), b->arg(), ea, eb, depth);
    case TKind::Inj:
      return a->index() == b->index() && equal(a->ann(), b->ann()) &&
             alpha_rec(a->arg(), b->arg(), ea, eb, depth);
    case TKind::Efq:
      return equal(a->ann(), b->ann()) && alpha_rec(a->arg(), b->arg(), ea, eb, depth);
    case TKind::Case: {
      if (!alpha_rec(a->scrut(), b->scrut(), ea, eb, depth)) return false;
      {
        Env sa = ea, sb = eb;
        sa[a->name()] = depth;
        sb[b->name()] = depth;
        if (!alpha_rec(a->left(), b->left(), sa, sb, depth + 1)) return false;
      }
      Env sa = ea, sb = eb;
      sa[a->name2()] = depth;
      sb[b->name2()] = depth;
      return alpha_rec(a->right(), b->right(), sa, sb, depth + 1);
    }
    case TKind::Box: {
      if (a->box_arity() != b->box_arity()) return false;
      for (size_t i = 0; i < a->box_arity(); ++i) {
        if (!ann_eq(a->binders()[i].ann, b->binders()[i].ann)) return false;
        if (!alpha_rec(a->box_arg(i), b->box_arg(i), ea, eb, depth)) return false;
      }
      Env sa = ea, sb = eb;
      int d = depth;
      for (size_t i = 0; i < a->box_arity(); ++i, ++d) {
        sa[a->binders()[i].name] = d;
        sb[b->binders()[i].name] = d;
      }
      return alpha_rec(a->body(), b->body(), sa, sb, d);
    }
  }
  return false;
}

void key_rec(const TermPtr& t, Env& env, int depth, std::string& out) {
  auto var_key = [&](const std::string& n) {
    auto it = env.find(n);
    if (it != env.end())
      out += "b" + std::to_string(it->second);
    else
      out += "f" + n;
  };
  auto ann_key = [&](const FormulaPtr& f) {
    out += '[';
    out += print_formula(f);
    out += ']';
  };
  switch (t->kind()) {
    case TKind::Var:
      out += 'V';
      var_key(t->name());
      break;
    case TKind::Lam: {
      out += 'L';
      ann_key(t->ann());
      Env saved = env;
      env[t->name()] = depth;
      key_rec(t->body(), env, depth + 1, out);
      env = saved;
      break;
    }
    case TKind::App:
      out += "A(";
      key_rec(t->fun(), env, depth, out);
      out += ',';
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
    case TKind::Pair:
      out += "P(";
      key_rec(t->fst(), env, depth, out);
      out += ',';
      key_rec(t->snd(), env, depth, out);
      out += ')';
      break;
    case TKind::Proj:
      out += t->index() == 1 ? "p1(" : "p2(";
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
    case TKind::Inj:
      out += t->index() == 1 ? "i1" : "i2";
      ann_key(t->ann());
      out += '(';
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
    case TKind::Efq:
      out += 'E';
      ann_key(t->ann());
      out += '(';
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
    case TKind::Unit:
      out += "U(";
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
    case TKind::Case: {
      out += "C(";
      key_rec(t->scrut(), env, depth, out);
      out += ',';
      {
        Env saved = env;
        env[t->name()] = depth;
        key_rec(t->left(), env, depth + 1, out);
        env = saved;
      }
      out += ',';
      Env saved = env;
      env[t->name2()] = depth;
      key_rec(t->right(), env, depth + 1, out);
      env = saved;
      out += ')';
      break;
    }
    case TKind::Box: {
      out += "B(";
      for (size_t i = 0; i < t->box_arity(); ++i) {
        if (t->binders()[i].ann)
          ann_key(*t->binders()[i].ann);
        else
          out += "[-]";
        key_rec(t->box_arg(i), env, depth, out);
        out += ',';
      }
      out += '|';
      Env saved = env;
      int d = depth;
      for (const auto& b : t->binders()) env[b.name] = d++;
      key_rec(t->body(), env, d, out);
      env = saved;
      out += ')';
      break;
    }
  }
}

}  // namespace

bool alpha_eq(const TermPtr& a, const TermPtr& b) {
  Env ea, eb;
  return alpha_rec(a, b, ea, eb, 0);
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> bound, out;
  free_vars_rec(t, bound, out);
  return out;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s) {
  switch (t->kind()) {
    case TKind::Var:
      return t->name() == x ? s : t;
    case TKind::Lam: {
      if (t->name() == x) return t;
      TermPtr body = t->body();
      std::string bn = t->name();
      std::set<std::string> fvs = free_vars(s);
      if (fvs.count(bn) && free_vars(body).count(x)) {
        std::set<std::string> avoid = fvs;
        for (const auto& v : free_vars(body)) avoid.insert(v);
        avoid.insert(x);
        std::string bn2 = fresh_name(bn, avoid);
        body = subst(body, bn, Term::var(bn2));
        bn = bn2;
      }
      return Term::lam(bn, t->ann(), subst(body, x, s));
    }
    case TKind::App:
      return Term::app(subst(t->fun(), x, s), subst(t->arg(), x, s));
    case TKind::Pair:
      return Term::pair(subst(t->fst(), x, s), subst(t->snd(), x, s));
    case TKind::Proj:
      return Term::proj(t->index(), subst(t->arg(), x, s));
    case TKind::Inj:
      return Term::inj(t->index(), t->ann(), subst(t->arg(), x, s));
    case TKind::Efq:
      return Term::efq(t->ann(), subst(t->arg(), x, s));
    case TKind::Unit:
      return Term::unit(subst(t->arg(), x, s));
    case TKind::Case: {
      TermPtr scrut = subst(t->scrut(), x, s);
      std::set<std::string> fvs = free_vars(s);
      auto branch = [&](const std::string& binder, const TermPtr& body)
          -> std::pair<std::string, TermPtr> {
        if (binder == x) return {binder, body};
        std::string bn = binder;
        TermPtr b = body;
        if (fvs.count(bn) && free_vars(b).count(x)) {
          std::set<std::string> avoid = fvs;
          for (const auto& v : free_vars(b)) avoid.insert(v);
          avoid.insert(x);
          std::string bn2 = fresh_name(bn, avoid);
          b = subst(b, bn, Term::var(bn2));
          bn = bn2;
        }
        return {bn, subst(b, x, s)};
      };
      auto [ln, lb] = branch(t->name(), t->left());
      auto [rn, rb] = branch(t->name2(), t->right());
      return Term::case_of(scrut, ln, lb, rn, rb);
    }
    case TKind::Box: {
      std::vector<TermPtr> args;
      for (size_t i = 0; i < t->box_arity(); ++i) args.push_back(subst(t->box_arg(i), x, s));
      std::vector<BoxBinder> binders = t->binders();
      TermPtr body = t->body();
      bool shadowed = false;
      for (const auto& b : binders)
        if (b.name == x) shadowed = true;
      if (!shadowed && free_vars(body).count(x)) {
        std::set<std::string> fvs = free_vars(s);
        std::set<std::string> avoid = fvs;
        for (const auto& v : free_vars(body)) avoid.insert(v);
        avoid.insert(x);
        for (const auto& b : binders) avoid.insert(b.name);
        for (auto& b : binders) {
          if (fvs.count(b.name)) {
            std::string bn2 = fresh_name(b.name, avoid);
            avoid.insert(bn2);
            body = subst(body, b.name, Term::var(bn2));
            b.name = bn2;
          }
        }
        body = subst(body, x, s);
      }
      return Term::box(std::move(binders), std::move(args), body);
    }
  }
  throw std::logic_error("unreachable");
}

int term_size(const TermPtr& t) {
  int n = 1;
  for (const auto& k : t->children()) n += term_size(k);
  return n;
}

bool contains_kind(const TermPtr& t, TKind k) {
  if (t->kind() == k) return true;
  for (const auto& c : t->children())
    if (contains_kind(c, k)) return true;
  return false;
}

std::string canonical_key(const TermPtr& t) {
  std::string out;
  Env env;
  key_rec(t, env, 0, out);
  return out;
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int i : p) {
    if (i < 0 || static_cast<size_t>(i) >= cur->children().size())
      throw std::out_of_range("path leaves the term");
    cur = cur->child(i);
  }
  return cur;
}

namespace {

TermPtr rebuild_with_child(const TermPtr& t, int i, const TermPtr& c) {
  std::vector<TermPtr> kids = t->children();
  kids[static_cast<size_t>(i)] = c;
  switch (t->kind()) {
    case TKind::Lam: return Term::lam(t->name(), t->ann(), kids[0]);
    case TKind::App: return Term::app(kids[0], kids[1]);
    case TKind::Pair: return Term::pair(kids[0], kids[1]);
    case TKind::Proj: return Term::proj(t->index(), kids[0]);
    case TKind::Inj: return Term::inj(t->index(), t->ann(), kids[0]);
    case TKind::Efq: return Term::efq(t->ann(), kids[0]);
    case TKind::Unit: return Term::unit(kids[0]);
    case TKind::Case: return Term::case_of(kids[0], t->name(), kids[1], t->name2(), kids[2]);
    case TKind::Box: {
      TermPtr body = kids.back();
      kids.pop_back();
      return Term::box(t->binders(), std::move(kids), body);
    }
    default:
      throw std::logic_error("node has no children");
  }
}

}  // namespace

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& s) {
  if (p.empty()) return s;
  int i = p.front();
  if (i < 0 || static_cast<size_t>(i) >= t->children().size())
    throw std::out_of_range("path leaves the term");
  Path rest(p.begin() + 1, p.end());
  return rebuild_with_child(t, i, replace_at(t->child(i), rest, s));
}

namespace {

// Printing levels: 0 term (lam, bel), 1 application, 2 prefix operator, 3 atom.
int term_level(const TermPtr& t) {
  switch (t->kind()) {
    case TKind::Lam:
    case TKind::Box: return 0;
    case TKind::App: return 1;
    case TKind::Proj:
    case TKind::Inj:
    case TKind::Efq:
    case TKind::Unit: return 2;
    default: return 3;
  }
}

void print_term_rec(const TermPtr& t, int min_level, std::string& out) {
  bool parens = term_level(t) < min_level;
  if (parens) out += '(';
  switch (t->kind()) {
    case TKind::Var: out += t->name(); break;
    case TKind::Lam:
      out += '\\';
      out += t->name();
      out += ':';
      out += print_formula(t->ann());
      out += ". ";
      print_term_rec(t->body(), 0, out);
      break;
    case TKind::App:
      print_term_rec(t->fun(), 1, out);
      out += ' ';
      print_term_rec(t->arg(), 2, out);
      break;
    case TKind::Pair:
      out += '<';
      print_term_rec(t->fst(), 0, out);
      out += ", ";
      print_term_rec(t->snd(), 0, out);
      out += '>';
      break;
    case TKind::Proj:
      out += t->index() == 1 ? "p1 " : "p2 ";
      print_term_rec(t->arg(), 2, out);
      break;
    case TKind::Inj:
      out += t->index() == 1 ? "i1[" : "i2[";
      out += print_formula(t->ann());
      out += "] ";
      print_term_rec(t->arg(), 2, out);
      break;
    case TKind::Efq:
      out += "efq[";
      out += print_formula(t->ann());
      out += "] ";
      print_term_rec(t->arg(), 2, out);
      break;
    case TKind::Unit:
      out += "unit ";
      print_term_rec(t->arg(), 2, out);
      break;
    case TKind::Case:
      out += "case ";
      print_term_rec(t->scrut(), 1, out);
      out += " of {";
      out += t->name();
      out += " => ";
      print_term_rec(t->left(), 0, out);
      out += " | ";
      out += t->name2();
      out += " => ";
      print_term_rec(t->right(), 0, out);
      out += '}';
      break;
    case TKind::Box: {
      out += "bel ";
      for (size_t i = 0; i < t->box_arity(); ++i) {
        if (i > 0) out += ", ";
        out += t->binders()[i].name;
        if (t->binders()[i].ann) {
          out += ':';
          out += print_formula(*t->binders()[i].ann);
        }
        out += " = ";
        print_term_rec(t->box_arg(i), 1, out);
      }
      if (t->box_arity() > 0) out += ' ';
      out += "in ";
      print_term_rec(t->body(), 0, out);
      break;
    }
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_term_rec(t, 0, out);
  return out;
}

}  // namespace iel
