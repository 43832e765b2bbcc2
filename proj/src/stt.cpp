#include "iel/stt.hpp"

#include <deque>
#include <unordered_map>

namespace iel {

SimpleTypePtr SimpleType::atom(std::string name) {
  return SimpleTypePtr(new SimpleType(SKind::Atom, std::move(name), nullptr, nullptr));
}
SimpleTypePtr SimpleType::arrow(SimpleTypePtr l, SimpleTypePtr r) {
  return SimpleTypePtr(new SimpleType(SKind::Arrow, "", std::move(l), std::move(r)));
}
SimpleTypePtr SimpleType::answer() {
  static const SimpleTypePtr q = SimpleType::atom("q");
  return q;
}
SimpleTypePtr SimpleType::neg(SimpleTypePtr t) { return arrow(std::move(t), answer()); }

bool stt_type_equal(const SimpleTypePtr& a, const SimpleTypePtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->kind() != b->kind()) return false;
  if (a->kind() == SKind::Atom) return a->atom_name() == b->atom_name();
  return stt_type_equal(a->lhs(), b->lhs()) && stt_type_equal(a->rhs(), b->rhs());
}

std::string print_simple_type(const SimpleTypePtr& t) {
  if (t->kind() == SKind::Atom) return t->atom_name();
  std::string l = print_simple_type(t->lhs());
  if (t->lhs()->kind() == SKind::Arrow) l = "(" + l + ")";
  return l + " -> " + print_simple_type(t->rhs());
}

SttTermPtr SttTerm::var(std::string name) {
  SttTerm* t = new SttTerm(SttKind::Var);
  t->name_ = std::move(name);
  return SttTermPtr(t);
}
SttTermPtr SttTerm::lam(std::string name, std::optional<SimpleTypePtr> ann, SttTermPtr body) {
  SttTerm* t = new SttTerm(SttKind::Lam);
  t->name_ = std::move(name);
  t->ann_ = std::move(ann);
  t->body_ = std::move(body);
  return SttTermPtr(t);
}
SttTermPtr SttTerm::app(SttTermPtr fun, SttTermPtr arg) {
  SttTerm* t = new SttTerm(SttKind::App);
  t->fun_ = std::move(fun);
  t->arg_ = std::move(arg);
  return SttTermPtr(t);
}

namespace {

using Env = std::map<std::string, int>;

bool ann_equal(const std::optional<SimpleTypePtr>& a, const std::optional<SimpleTypePtr>& b) {
  if (a.has_value() != b.has_value()) return false;
  return !a.has_value() || stt_type_equal(*a, *b);
}

bool alpha_rec(const SttTermPtr& a, const SttTermPtr& b, Env& ea, Env& eb, int depth) {
  if (a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case SttKind::Var: {
      auto ia = ea.find(a->name());
      auto ib = eb.find(b->name());
      if ((ia != ea.end()) != (ib != eb.end())) return false;
      if (ia != ea.end()) return ia->second == ib->second;
      return a->name() == b->name();
    }
    case SttKind::Lam: {
      if (!ann_equal(a->ann(), b->ann())) return false;
      Env sa = ea, sb = eb;
      sa[a->name()] = depth;
      sb[b->name()] = depth;
      return alpha_rec(a->body(), b->body(), sa, sb, depth + 1);
    }
    case SttKind::App:
      return alpha_rec(a->fun(), b->fun(), ea, eb, depth) &&
             alpha_rec(a->arg(), b->arg(), ea, eb, depth);
  }
  return false;
}

void fv_rec(const SttTermPtr& t, std::set<std::string>& bound, std::set<std::string>& out) {
  switch (t->kind()) {
    case SttKind::Var:
      if (!bound.count(t->name())) out.insert(t->name());
      break;
    case SttKind::Lam: {
      bool fresh = bound.insert(t->name()).second;
      fv_rec(t->body(), bound, out);
      if (fresh) bound.erase(t->name());
      break;
    }
    case SttKind::App:
      fv_rec(t->fun(), bound, out);
      fv_rec(t->arg(), bound, out);
      break;
  }
}

std::string fresh_stt(const std::string& base, const std::set<std::string>& avoid) {
  if (!avoid.count(base)) return base;
  for (int i = 1;; ++i) {
    std::string cand = base + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

void key_rec(const SttTermPtr& t, Env& env, int depth, std::string& out) {
  switch (t->kind()) {
    case SttKind::Var: {
      auto it = env.find(t->name());
      if (it != env.end())
        out += "b" + std::to_string(it->second);
      else
        out += "f" + t->name();
      break;
    }
    case SttKind::Lam: {
      out += 'L';
      if (t->ann()) {
        out += '[';
        out += print_simple_type(*t->ann());
        out += ']';
      } else {
        out += "[-]";
      }
      Env saved = env;
      env[t->name()] = depth;
      key_rec(t->body(), env, depth + 1, out);
      env = saved;
      break;
    }
    case SttKind::App:
      out += "A(";
      key_rec(t->fun(), env, depth, out);
      out += ',';
      key_rec(t->arg(), env, depth, out);
      out += ')';
      break;
  }
}

}  // namespace

bool stt_alpha_eq(const SttTermPtr& a, const SttTermPtr& b) {
  Env ea, eb;
  return alpha_rec(a, b, ea, eb, 0);
}

std::set<std::string> stt_free_vars(const SttTermPtr& t) {
  std::set<std::string> bound, out;
  fv_rec(t, bound, out);
  return out;
}

SttTermPtr stt_subst(const SttTermPtr& t, const std::string& x, const SttTermPtr& s) {
  switch (t->kind()) {
    case SttKind::Var:
      return t->name() == x ? s : t;
    case SttKind::Lam: {
      if (t->name() == x) return t;
      std::string bn = t->name();
      SttTermPtr body = t->body();
      std::set<std::string> fvs = stt_free_vars(s);
      if (fvs.count(bn) && stt_free_vars(body).count(x)) {
        std::set<std::string> avoid = fvs;
        for (const auto& v : stt_free_vars(body)) avoid.insert(v);
        avoid.insert(x);
        std::string bn2 = fresh_stt(bn, avoid);
        body = stt_subst(body, bn, SttTerm::var(bn2));
        bn = bn2;
      }
      return SttTerm::lam(bn, t->ann(), stt_subst(body, x, s));
    }
    case SttKind::App:
      return SttTerm::app(stt_subst(t->fun(), x, s), stt_subst(t->arg(), x, s));
  }
  throw std::logic_error("unreachable");
}

int stt_size(const SttTermPtr& t) {
  switch (t->kind()) {
    case SttKind::Var: return 1;
    case SttKind::Lam: return 1 + stt_size(t->body());
    case SttKind::App: return 1 + stt_size(t->fun()) + stt_size(t->arg());
  }
  return 0;
}

std::string stt_canonical_key(const SttTermPtr& t) {
  std::string out;
  Env env;
  key_rec(t, env, 0, out);
  return out;
}

std::string print_stt(const SttTermPtr& t) {
  switch (t->kind()) {
    case SttKind::Var:
      return t->name();
    case SttKind::Lam: {
      std::string ann = t->ann() ? ":" + print_simple_type(*t->ann()) : "";
      return "\\" + t->name() + ann + ". " + print_stt(t->body());
    }
    case SttKind::App: {
      std::string f = print_stt(t->fun());
      if (t->fun()->kind() == SttKind::Lam) f = "(" + f + ")";
      std::string a = print_stt(t->arg());
      if (t->arg()->kind() != SttKind::Var) a = "(" + a + ")";
      return f + " " + a;
    }
  }
  return "";
}

SimpleTypePtr stt_infer(const SttContext& ctx, const SttTermPtr& t) {
  switch (t->kind()) {
    case SttKind::Var: {
      auto it = ctx.find(t->name());
      if (it == ctx.end()) throw SttError("unbound variable " + t->name());
      return it->second;
    }
    case SttKind::Lam: {
      if (!t->ann()) throw SttError("unannotated lambda " + t->name());
      SttContext c = ctx;
      c[t->name()] = *t->ann();
      return SimpleType::arrow(*t->ann(), stt_infer(c, t->body()));
    }
    case SttKind::App: {
      SimpleTypePtr f = stt_infer(ctx, t->fun());
      SimpleTypePtr a = stt_infer(ctx, t->arg());
      if (f->kind() != SKind::Arrow)
        throw SttError("applied term is not a function: " + print_simple_type(f));
      if (!stt_type_equal(f->lhs(), a))
        throw SttError("argument type mismatch: expected " + print_simple_type(f->lhs()) +
                       ", found " + print_simple_type(a));
      return f->rhs();
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// One-step reducts at the root only.
void root_reducts(const SttTermPtr& t, std::vector<SttTermPtr>& out) {
  if (t->kind() == SttKind::App && t->fun()->kind() == SttKind::Lam)
    out.push_back(stt_subst(t->fun()->body(), t->fun()->name(), t->arg()));
  if (t->kind() == SttKind::Lam && t->body()->kind() == SttKind::App &&
      t->body()->arg()->kind() == SttKind::Var && t->body()->arg()->name() == t->name() &&
      !stt_free_vars(t->body()->fun()).count(t->name()))
    out.push_back(t->body()->fun());
}

void successors_rec(const SttTermPtr& t, std::vector<SttTermPtr>& out) {
  root_reducts(t, out);
  switch (t->kind()) {
    case SttKind::Var:
      break;
    case SttKind::Lam: {
      std::vector<SttTermPtr> inner;
      successors_rec(t->body(), inner);
      for (const auto& b : inner) out.push_back(SttTerm::lam(t->name(), t->ann(), b));
      break;
    }
    case SttKind::App: {
      std::vector<SttTermPtr> fs, as;
      successors_rec(t->fun(), fs);
      for (const auto& f : fs) out.push_back(SttTerm::app(f, t->arg()));
      successors_rec(t->arg(), as);
      for (const auto& a : as) out.push_back(SttTerm::app(t->fun(), a));
      break;
    }
  }
}

// Leftmost-outermost single step; nullptr when normal.
SttTermPtr lo_step(const SttTermPtr& t) {
  std::vector<SttTermPtr> root;
  root_reducts(t, root);
  if (!root.empty()) return root.front();
  switch (t->kind()) {
    case SttKind::Var:
      return nullptr;
    case SttKind::Lam: {
      SttTermPtr b = lo_step(t->body());
      return b ? SttTerm::lam(t->name(), t->ann(), b) : nullptr;
    }
    case SttKind::App: {
      if (SttTermPtr f = lo_step(t->fun())) return SttTerm::app(f, t->arg());
      if (SttTermPtr a = lo_step(t->arg())) return SttTerm::app(t->fun(), a);
      return nullptr;
    }
  }
  return nullptr;
}

}  // namespace

std::vector<SttTermPtr> stt_successors(const SttTermPtr& t) {
  std::vector<SttTermPtr> out;
  successors_rec(t, out);
  return out;
}

SttTermPtr stt_normalize_beta_eta(const SttTermPtr& t, uint64_t fuel) {
  SttTermPtr cur = t;
  for (uint64_t i = 0; i <= fuel; ++i) {
    SttTermPtr next = lo_step(cur);
    if (!next) return cur;
    if (i == fuel) break;
    cur = next;
  }
  throw SttError("beta-eta normalization ran out of fuel");
}

ReachResult stt_reduces_to(const SttTermPtr& m, const SttTermPtr& n, int bound,
                           uint64_t node_cap) {
  ReachResult res;
  std::string target = stt_canonical_key(n);
  std::string start = stt_canonical_key(m);
  res.explored = 1;
  if (start == target) {
    res.found = true;
    return res;
  }
  std::unordered_map<std::string, int> seen;
  seen.emplace(std::move(start), 0);
  std::deque<std::pair<SttTermPtr, int>> queue;
  queue.emplace_back(m, 0);
  while (!queue.empty()) {
    auto [cur, depth] = queue.front();
    queue.pop_front();
    if (depth >= bound) continue;
    for (const SttTermPtr& s : stt_successors(cur)) {
      std::string key = stt_canonical_key(s);
      if (key == target) {
        res.found = true;
        res.steps = depth + 1;
        return res;
      }
      auto [it, fresh] = seen.emplace(std::move(key), depth + 1);
      if (!fresh) continue;
      ++res.explored;
      if (res.explored >= node_cap) {
        res.capped = true;
        return res;
      }
      queue.emplace_back(s, depth + 1);
    }
  }
  return res;
}

}  // namespace iel
