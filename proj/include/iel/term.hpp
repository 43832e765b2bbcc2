#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "iel/formula.hpp"

namespace iel {

enum class TKind { Var, Lam, App, Pair, Proj, Inj, Case, Efq, Unit, Box };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Box binder; the annotation is absent until it has been resolved against the
// type of the corresponding argument (surface syntax permits `bel x = t in s`).
struct BoxBinder {
  std::string name;
  std::optional<FormulaPtr> ann;
};

// Path from the root as child indices. Child order: Lam [body]; App [fun, arg];
// Pair [fst, snd]; Proj/Inj/Efq/Unit [arg]; Case [scrut, left, right];
// Box [args..., body].
using Path = std::vector<int>;

class Term {
public:
  static TermPtr var(std::string name);
  static TermPtr lam(std::string name, FormulaPtr ann, TermPtr body);
  static TermPtr app(TermPtr fun, TermPtr arg);
  static TermPtr pair(TermPtr fst, TermPtr snd);
  static TermPtr proj(int index, TermPtr arg);  // index in {1, 2}
  static TermPtr inj(int index, FormulaPtr disjunction, TermPtr arg);
  static TermPtr case_of(TermPtr scrut, std::string x, TermPtr left, std::string y, TermPtr right);
  static TermPtr efq(FormulaPtr target, TermPtr arg);
  static TermPtr unit(TermPtr arg);
  static TermPtr box(std::vector<BoxBinder> binders, std::vector<TermPtr> args, TermPtr body);

  TKind kind() const { return kind_; }
  const std::string& name() const { return name_; }    // Var / Lam binder / Case left binder
  const std::string& name2() const { return name2_; }  // Case right binder
  int index() const { return index_; }                 // Proj / Inj
  const FormulaPtr& ann() const { return ann_; }       // Lam / Inj / Efq
  const std::vector<BoxBinder>& binders() const { return binders_; }
  const std::vector<TermPtr>& children() const { return kids_; }

  const TermPtr& child(size_t i) const { return kids_[i]; }
  const TermPtr& body() const { return kids_.back(); }  // Lam / Box
  const TermPtr& fun() const { return kids_[0]; }
  const TermPtr& arg() const { return kids_.back(); }  // App / Proj / Inj / Efq / Unit
  const TermPtr& fst() const { return kids_[0]; }
  const TermPtr& snd() const { return kids_[1]; }
  const TermPtr& scrut() const { return kids_[0]; }
  const TermPtr& left() const { return kids_[1]; }
  const TermPtr& right() const { return kids_[2]; }
  size_t box_arity() const { return binders_.size(); }
  const TermPtr& box_arg(size_t i) const { return kids_[i]; }

private:
  Term(TKind k) : kind_(k) {}

  TKind kind_;
  std::string name_, name2_;
  int index_ = 0;
  FormulaPtr ann_;
  std::vector<BoxBinder> binders_;
  std::vector<TermPtr> kids_;
};

bool alpha_eq(const TermPtr& a, const TermPtr& b);
std::set<std::string> free_vars(const TermPtr& t);
// Capture-avoiding substitution of s for free occurrences of x.
TermPtr subst(const TermPtr& t, const std::string& x, const TermPtr& s);
int term_size(const TermPtr& t);
bool contains_kind(const TermPtr& t, TKind k);

// Alpha-invariant serialization (bound names become de Bruijn levels);
// two terms are alpha-equal iff their keys coincide.
std::string canonical_key(const TermPtr& t);

TermPtr subterm_at(const TermPtr& t, const Path& p);
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& s);

// Smallest of base, base1, base2, ... not in avoid.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

std::string print_term(const TermPtr& t);

}  // namespace iel
