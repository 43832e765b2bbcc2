#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "iel/formula.hpp"

namespace iel {

struct DecideError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Subformula closure of the goal and hypotheses, always including top.
std::vector<FormulaPtr> universe(const FormulaPtr& goal, const std::vector<FormulaPtr>& hyps);

struct DecideStats {
  size_t universe_size = 0;
  size_t hypothesis_sets = 0;
  size_t sequents_derived = 0;
};

// Derivability by forward saturation over the subformula universe: closure
// under hypotheses, introductions, eliminations with derived major premise,
// and the box rule extending the hypotheses by the bodies of derived boxed
// formulas. Universes above 64 formulas are rejected.
bool decide(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal,
            DecideStats* stats = nullptr);

// Independent oracle: does some normal well-typed proof term of at most
// size_bound nodes exist, with every formula in its derivation drawn from the
// universe? Computes minimal proof sizes over the normal-form grammar.
bool oracle_provable(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal, int size_bound);

// All formulas over the given atoms and the connectives bot/top/->//\/\//[]
// with at most max_size connectives (bot/top are leaves), streamed in a
// deterministic duplicate-free order. Return false from fn to stop.
void enumerate_formulas(const std::vector<std::string>& atoms, int max_size,
                        const std::function<bool(const FormulaPtr&)>& fn);
std::vector<FormulaPtr> enumerate_formulas_list(const std::vector<std::string>& atoms,
                                                int max_size);

enum class MetaProperty { Disjunction, WeakDisjunction, BoxPrimality, Reflection, Consistency };

const char* meta_property_name(MetaProperty p);
std::optional<MetaProperty> meta_property_from_name(const std::string& name);

struct MetaReport {
  MetaProperty property;
  std::string universe_desc;
  uint64_t checked = 0;
  std::vector<std::string> counterexamples;  // printed trigger formulas; expected empty
};

// Scans every enumerated formula whose shape triggers the property
// (A \/ B, [] A, [] A \/ [] B, [] (A \/ B)) and verifies the corresponding
// conclusion with decide.
MetaReport check_metatheory(MetaProperty property, const std::vector<std::string>& atoms,
                            int max_size, bool parallel = true);

}  // namespace iel
