#include "iel/formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace iel {

FormulaPtr Formula::atom(std::string name) {
  if (name.empty()) throw std::invalid_argument("atom name must be nonempty");
  return FormulaPtr(new Formula(FKind::Atom, std::move(name), nullptr, nullptr));
}
FormulaPtr Formula::bot() {
  static const FormulaPtr f(new Formula(FKind::Bot, "", nullptr, nullptr));
  return f;
}
FormulaPtr Formula::top() {
  static const FormulaPtr f(new Formula(FKind::Top, "", nullptr, nullptr));
  return f;
}
FormulaPtr Formula::impl(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FKind::Impl, "", std::move(l), std::move(r)));
}
FormulaPtr Formula::conj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FKind::Conj, "", std::move(l), std::move(r)));
}
FormulaPtr Formula::disj(FormulaPtr l, FormulaPtr r) {
  return FormulaPtr(new Formula(FKind::Disj, "", std::move(l), std::move(r)));
}
FormulaPtr Formula::box(FormulaPtr b) {
  return FormulaPtr(new Formula(FKind::Box, "", std::move(b), nullptr));
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return 0;
  if (!a) return -1;
  if (!b) return 1;
  if (a->kind() != b->kind()) return a->kind() < b->kind() ? -1 : 1;
  switch (a->kind()) {
    case FKind::Atom:
      return a->atom_name().compare(b->atom_name()) < 0   ? -1
             : a->atom_name().compare(b->atom_name()) > 0 ? 1
                                                          : 0;
    case FKind::Bot:
    case FKind::Top:
      return 0;
    case FKind::Box:
      return compare(a->body(), b->body());
    default: {
      int c = compare(a->lhs(), b->lhs());
      if (c != 0) return c;
      return compare(a->rhs(), b->rhs());
    }
  }
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

namespace {

// Precedence levels: impl 1 (right assoc), disj 2, conj 3, box 4, leaves 5.
int level(const FormulaPtr& f) {
  switch (f->kind()) {
    case FKind::Impl: return 1;
    case FKind::Disj: return 2;
    case FKind::Conj: return 3;
    case FKind::Box: return 4;
    default: return 5;
  }
}

void print_rec(const FormulaPtr& f, int min_level, std::string& out) {
  bool parens = level(f) < min_level;
  if (parens) out += '(';
  switch (f->kind()) {
    case FKind::Atom: out += f->atom_name(); break;
    case FKind::Bot: out += "bot"; break;
    case FKind::Top: out += "top"; break;
    case FKind::Impl:
      print_rec(f->lhs(), 2, out);
      out += " -> ";
      print_rec(f->rhs(), 1, out);
      break;
    case FKind::Disj:
      print_rec(f->lhs(), 3, out);
      out += " \\/ ";
      print_rec(f->rhs(), 2, out);
      break;
    case FKind::Conj:
      print_rec(f->lhs(), 4, out);
      out += " /\\ ";
      print_rec(f->rhs(), 3, out);
      break;
    case FKind::Box:
      out += "[] ";
      print_rec(f->body(), 4, out);
      break;
  }
  if (parens) out += ')';
}

void collect_sub(const FormulaPtr& f, std::vector<FormulaPtr>& acc) {
  acc.push_back(f);
  switch (f->kind()) {
    case FKind::Impl:
    case FKind::Conj:
    case FKind::Disj:
      collect_sub(f->lhs(), acc);
      collect_sub(f->rhs(), acc);
      break;
    case FKind::Box:
      collect_sub(f->body(), acc);
      break;
    default: break;
  }
}

}  // namespace

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_rec(f, 0, out);
  return out;
}

std::vector<FormulaPtr> subformulas(const FormulaPtr& f) {
  std::vector<FormulaPtr> acc;
  collect_sub(f, acc);
  std::sort(acc.begin(), acc.end(), FormulaLess{});
  acc.erase(std::unique(acc.begin(), acc.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
            acc.end());
  return acc;
}

bool is_subformula(const FormulaPtr& g, const FormulaPtr& f) {
  if (equal(g, f)) return true;
  switch (f->kind()) {
    case FKind::Impl:
    case FKind::Conj:
    case FKind::Disj:
      return is_subformula(g, f->lhs()) || is_subformula(g, f->rhs());
    case FKind::Box:
      return is_subformula(g, f->body());
    default:
      return false;
  }
}

int formula_size(const FormulaPtr& f) {
  switch (f->kind()) {
    case FKind::Atom:
    case FKind::Bot:
    case FKind::Top:
      return 0;
    case FKind::Box:
      return 1 + formula_size(f->body());
    default:
      return 1 + formula_size(f->lhs()) + formula_size(f->rhs());
  }
}

bool mentions_bot_or_top(const FormulaPtr& f) {
  switch (f->kind()) {
    case FKind::Bot:
    case FKind::Top:
      return true;
    case FKind::Atom:
      return false;
    case FKind::Box:
      return mentions_bot_or_top(f->body());
    default:
      return mentions_bot_or_top(f->lhs()) || mentions_bot_or_top(f->rhs());
  }
}

void collect_atoms(const FormulaPtr& f, std::vector<std::string>& out) {
  switch (f->kind()) {
    case FKind::Atom:
      if (std::find(out.begin(), out.end(), f->atom_name()) == out.end())
        out.push_back(f->atom_name());
      break;
    case FKind::Box:
      collect_atoms(f->body(), out);
      break;
    case FKind::Impl:
    case FKind::Conj:
    case FKind::Disj:
      collect_atoms(f->lhs(), out);
      collect_atoms(f->rhs(), out);
      break;
    default: break;
  }
}

}  // namespace iel
