#pragma once

#include "iel/stt.hpp"
#include "iel/typing.hpp"

namespace iel {

struct CpsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Type translation: neg_type(A) = ~~cps_circ(A) with ~X = X -> q.
//   p| = p, (A -> B)| = neg A -> neg B wrapped per clause,
//   (A /\ B)| = ~(negA -> ~negB), (A \/ B)| = ~negA -> ~~negB,
//   ([]A)| = ~~A|.
// Rejects bottom, top and the reserved atom q.
SimpleTypePtr cps_circ(const FormulaPtr& f);
SimpleTypePtr neg_type(const FormulaPtr& f);

SttContext translate_context(const Context& ctx);

// The plain translation. When the source term types under ctx the image is
// fully annotated and stt_infer gives neg_type of the source type; otherwise
// the image is unannotated. Efq/Unit nodes are rejected.
SttTermPtr cps(const TermPtr& t, const Context& ctx = Context());

// The infix colon operator of the modified translation, t : r.
SttTermPtr colon(const TermPtr& t, const SttTermPtr& r, const Context& ctx = Context());

// Modified translation: \k. (t : k).
SttTermPtr cps_mod(const TermPtr& t, const Context& ctx = Context());

}  // namespace iel
