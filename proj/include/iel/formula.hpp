#pragma once

#include <memory>
#include <string>
#include <vector>

namespace iel {

enum class FKind { Atom, Bot, Top, Impl, Conj, Disj, Box };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Propositional formulas with the belief modality. Immutable, subtrees shared.
class Formula {
public:
  static FormulaPtr atom(std::string name);
  static FormulaPtr bot();
  static FormulaPtr top();
  static FormulaPtr impl(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr conj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr disj(FormulaPtr lhs, FormulaPtr rhs);
  static FormulaPtr box(FormulaPtr body);

  FKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const FormulaPtr& lhs() const { return lhs_; }
  const FormulaPtr& rhs() const { return rhs_; }
  const FormulaPtr& body() const { return lhs_; }

private:
  Formula(FKind k, std::string a, FormulaPtr l, FormulaPtr r)
      : kind_(k), atom_(std::move(a)), lhs_(std::move(l)), rhs_(std::move(r)) {}

  FKind kind_;
  std::string atom_;
  FormulaPtr lhs_, rhs_;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);
// Total order compatible with equal; gives deterministic formula sets.
int compare(const FormulaPtr& a, const FormulaPtr& b);

struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

std::string print_formula(const FormulaPtr& f);

// f and all its subformulas, deduplicated, sorted by compare().
std::vector<FormulaPtr> subformulas(const FormulaPtr& f);
bool is_subformula(const FormulaPtr& g, const FormulaPtr& f);

// Connective count; atoms, bot and top are size 0.
int formula_size(const FormulaPtr& f);
bool mentions_bot_or_top(const FormulaPtr& f);
void collect_atoms(const FormulaPtr& f, std::vector<std::string>& out);

}  // namespace iel
