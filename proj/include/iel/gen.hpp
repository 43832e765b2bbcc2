#pragma once

#include <cstdint>
#include <random>

#include "iel/typing.hpp"

namespace iel {

struct Rng {
  std::mt19937_64 eng;
  explicit Rng(uint64_t seed) : eng(seed) {}
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(eng() % static_cast<uint64_t>(n)); }
  bool chance(int pct) { return below(100) < pct; }
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<size_t>(below(static_cast<int>(v.size())))];
  }
};

// splitmix64; stable per-item seeds so parallel and serial runs see the same corpus.
uint64_t mix_seed(uint64_t seed, uint64_t index);

// Untyped bottom/top-free term, permutation-redex rich, at most `budget` nodes.
TermPtr gen_untyped_term(Rng& rng, int budget);

struct TypedGenConfig {
  std::vector<std::string> atoms = {"p", "r"};
  int depth = 4;
  bool with_bot = false;  // adds bottom-typed hypotheses and plants efq shapes
  bool with_box = true;
  bool closed = false;
  int redex_pct = 45;
  int goal_size = 2;
};

struct TypedSample {
  Context ctx;
  TermPtr term;
  FormulaPtr type;
};

// Well-typed by construction; infer(ctx, term) equals type.
TypedSample gen_typed_term(Rng& rng, const TypedGenConfig& cfg);

// A term of the given type in the given context, when one is reachable.
std::optional<TermPtr> gen_term_for_goal(Rng& rng, const TypedGenConfig& cfg, const Context& ctx,
                                         const FormulaPtr& goal);

}  // namespace iel
