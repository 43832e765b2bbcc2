#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "iel/formula.hpp"

namespace iel {

// Implicational simple type theory, the target of the CPS translations.
// The answer atom is the reserved name "q".

enum class SKind { Atom, Arrow };

class SimpleType;
using SimpleTypePtr = std::shared_ptr<const SimpleType>;

class SimpleType {
public:
  static SimpleTypePtr atom(std::string name);
  static SimpleTypePtr arrow(SimpleTypePtr lhs, SimpleTypePtr rhs);
  static SimpleTypePtr answer();  // the distinguished atom q
  static SimpleTypePtr neg(SimpleTypePtr t);  // t -> q

  SKind kind() const { return kind_; }
  const std::string& atom_name() const { return atom_; }
  const SimpleTypePtr& lhs() const { return lhs_; }
  const SimpleTypePtr& rhs() const { return rhs_; }

private:
  SimpleType(SKind k, std::string a, SimpleTypePtr l, SimpleTypePtr r)
      : kind_(k), atom_(std::move(a)), lhs_(std::move(l)), rhs_(std::move(r)) {}
  SKind kind_;
  std::string atom_;
  SimpleTypePtr lhs_, rhs_;
};

bool stt_type_equal(const SimpleTypePtr& a, const SimpleTypePtr& b);
std::string print_simple_type(const SimpleTypePtr& t);

enum class SttKind { Var, Lam, App };

class SttTerm;
using SttTermPtr = std::shared_ptr<const SttTerm>;

class SttTerm {
public:
  static SttTermPtr var(std::string name);
  static SttTermPtr lam(std::string name, std::optional<SimpleTypePtr> ann, SttTermPtr body);
  static SttTermPtr app(SttTermPtr fun, SttTermPtr arg);

  SttKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const std::optional<SimpleTypePtr>& ann() const { return ann_; }
  const SttTermPtr& body() const { return body_; }
  const SttTermPtr& fun() const { return fun_; }
  const SttTermPtr& arg() const { return arg_; }

private:
  SttTerm(SttKind k) : kind_(k) {}
  SttKind kind_;
  std::string name_;
  std::optional<SimpleTypePtr> ann_;
  SttTermPtr body_, fun_, arg_;
};

bool stt_alpha_eq(const SttTermPtr& a, const SttTermPtr& b);
std::set<std::string> stt_free_vars(const SttTermPtr& t);
SttTermPtr stt_subst(const SttTermPtr& t, const std::string& x, const SttTermPtr& s);
int stt_size(const SttTermPtr& t);
std::string stt_canonical_key(const SttTermPtr& t);
std::string print_stt(const SttTermPtr& t);

struct SttError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using SttContext = std::map<std::string, SimpleTypePtr>;

// Standard simply typed inference; requires lambda annotations.
SimpleTypePtr stt_infer(const SttContext& ctx, const SttTermPtr& t);

// All one-step beta/eta reducts (eta: \x. m x -> m when x not free in m).
std::vector<SttTermPtr> stt_successors(const SttTermPtr& t);

// Deterministic leftmost-outermost beta-eta normalization.
SttTermPtr stt_normalize_beta_eta(const SttTermPtr& t, uint64_t fuel);

struct ReachResult {
  bool found = false;
  int steps = 0;           // length of the shortest path found
  uint64_t explored = 0;   // states visited
  bool capped = false;     // search stopped by the node cap
};

// Breadth-first reachability through beta-eta steps, up to `bound` steps.
ReachResult stt_reduces_to(const SttTermPtr& m, const SttTermPtr& n, int bound,
                           uint64_t node_cap = 1u << 22);

}  // namespace iel
