#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "iel/term.hpp"

namespace iel {

// Hypothesis set: finite map from variable names to formulas. Extension
// overrides (binders shadow outer hypotheses of the same name).
class Context {
public:
  Context() = default;
  explicit Context(std::map<std::string, FormulaPtr> bindings) : bindings_(std::move(bindings)) {}

  const FormulaPtr* lookup(const std::string& name) const {
    auto it = bindings_.find(name);
    return it == bindings_.end() ? nullptr : &it->second;
  }
  Context extended(const std::string& name, FormulaPtr f) const {
    Context c = *this;
    c.bindings_[name] = std::move(f);
    return c;
  }
  void bind(const std::string& name, FormulaPtr f) { bindings_[name] = std::move(f); }
  const std::map<std::string, FormulaPtr>& bindings() const { return bindings_; }
  bool empty() const { return bindings_.empty(); }
  size_t size() const { return bindings_.size(); }

private:
  std::map<std::string, FormulaPtr> bindings_;
};

struct TypeError : std::runtime_error {
  TypeError(Path path, FormulaPtr expected, FormulaPtr found, const std::string& detail);
  std::string render() const;        // "path: expected <f>, found <f>" / detail
  std::string to_json() const;       // {"path": [...], "expected": ..., "found": ...}
  Path path;
  FormulaPtr expected, found;        // may be null when not applicable
  std::string detail;
};

// Unique formula A with ctx |- t : A; throws TypeError otherwise.
FormulaPtr infer(const Context& ctx, const TermPtr& t);
std::optional<FormulaPtr> infer_opt(const Context& ctx, const TermPtr& t);
bool check(const Context& ctx, const TermPtr& t, const FormulaPtr& f);

// Fills in missing box binder annotations from the types of the arguments.
TermPtr resolve_annotations(const Context& ctx, const TermPtr& t);

// Every formula labeling a node of the typing derivation (deduplicated).
std::vector<FormulaPtr> derivation_formulas(const Context& ctx, const TermPtr& t);

// -- Hilbert side ------------------------------------------------------------

struct SchemeInfo {
  std::string id;
  size_t arity;
  std::string shape;  // e.g. "A -> B -> A"
};

// Axiom catalogue: then-1, then-2, and-intro, and-elim1, and-elim2, or-intro1,
// or-intro2, or-elim, ex-falso, k-box, coreflection.
const std::vector<SchemeInfo>& axiom_catalogue();
FormulaPtr axiom_instance(const std::string& scheme, const std::vector<FormulaPtr>& parts);
TermPtr ipc_axiom_term(const std::string& scheme, const std::vector<FormulaPtr>& parts);

struct HilbertLine {
  enum class Kind { Axiom, Hyp, MP };
  Kind kind;
  FormulaPtr formula;
  std::string scheme;             // Axiom
  std::vector<FormulaPtr> parts;  // Axiom
  size_t impl_line = 0, arg_line = 0;  // MP: impl_line proves A -> B, arg_line proves A
};

struct HilbertProof {
  std::vector<HilbertLine> lines;
};

struct NdProof {
  TermPtr term;
  Context hyps;
};

// Lines map to terms: axioms via ipc_axiom_term, MP to application, hypotheses
// to variables (one per distinct formula). Throws on malformed proofs.
NdProof hilbert_to_nd(const HilbertProof& proof);

}  // namespace iel
