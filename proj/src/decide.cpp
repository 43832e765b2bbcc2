#include "iel/decide.hpp"

#include <algorithm>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace iel {

std::vector<FormulaPtr> universe(const FormulaPtr& goal, const std::vector<FormulaPtr>& hyps) {
  std::vector<FormulaPtr> acc = subformulas(goal);
  for (const auto& h : hyps) {
    auto sub = subformulas(h);
    acc.insert(acc.end(), sub.begin(), sub.end());
  }
  std::sort(acc.begin(), acc.end(), FormulaLess{});
  acc.erase(std::unique(acc.begin(), acc.end(),
                        [](const FormulaPtr& a, const FormulaPtr& b) { return equal(a, b); }),
            acc.end());
  return acc;
}

namespace {

// Shared indexing of a universe: formula structure resolved to indices.
struct Universe {
  std::vector<FormulaPtr> formulas;
  int bot = -1, top = -1;
  struct Node {
    FKind kind;
    int lhs = -1, rhs = -1, body = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> impls, conjs, disjs, boxes;

  explicit Universe(std::vector<FormulaPtr> fs) : formulas(std::move(fs)) {
    if (formulas.size() > 64)
      throw DecideError("universe too large (" + std::to_string(formulas.size()) +
                        " formulas; the saturation procedure supports at most 64)");
    auto find = [&](const FormulaPtr& f) {
      auto it = std::lower_bound(formulas.begin(), formulas.end(), f, FormulaLess{});
      return static_cast<int>(it - formulas.begin());
    };
    nodes.resize(formulas.size());
    for (size_t i = 0; i < formulas.size(); ++i) {
      const FormulaPtr& f = formulas[i];
      nodes[i].kind = f->kind();
      switch (f->kind()) {
        case FKind::Bot: bot = static_cast<int>(i); break;
        case FKind::Top: top = static_cast<int>(i); break;
        case FKind::Impl:
        case FKind::Conj:
        case FKind::Disj:
          nodes[i].lhs = find(f->lhs());
          nodes[i].rhs = find(f->rhs());
          if (f->kind() == FKind::Impl) impls.push_back(static_cast<int>(i));
          if (f->kind() == FKind::Conj) conjs.push_back(static_cast<int>(i));
          if (f->kind() == FKind::Disj) disjs.push_back(static_cast<int>(i));
          break;
        case FKind::Box:
          nodes[i].body = find(f->body());
          boxes.push_back(static_cast<int>(i));
          break;
        default: break;
      }
    }
  }

  size_t size() const { return formulas.size(); }
};

struct Saturation {
  const Universe& uni;
  std::map<uint64_t, uint64_t> tables;  // hypothesis mask -> derived mask
  bool dirty = false;

  explicit Saturation(const Universe& u) : uni(u) {}

  uint64_t bit(int i) const { return uint64_t{1} << i; }

  uint64_t& ensure(uint64_t hyps) {
    auto it = tables.find(hyps);
    if (it != tables.end()) return it->second;
    uint64_t init = hyps;
    if (uni.top >= 0) init |= bit(uni.top);
    dirty = true;
    return tables.emplace(hyps, init).first->second;
  }

  void round() {
    std::vector<uint64_t> masks;
    masks.reserve(tables.size());
    for (const auto& [m, _] : tables) masks.push_back(m);
    for (uint64_t mask : masks) {
      uint64_t d = tables[mask];
      uint64_t nd = d;
      uint64_t all = uni.size() >= 64 ? ~uint64_t{0} : (uint64_t{1} << uni.size()) - 1;
      if (uni.bot >= 0 && (d & bit(uni.bot))) nd = all;  // ex falso: everything
      for (int i : uni.conjs) {
        const auto& n = uni.nodes[i];
        if (nd & bit(i)) nd |= bit(n.lhs) | bit(n.rhs);
        if ((nd & bit(n.lhs)) && (nd & bit(n.rhs))) nd |= bit(i);
      }
      for (int i : uni.disjs) {
        const auto& n = uni.nodes[i];
        if ((nd & bit(n.lhs)) || (nd & bit(n.rhs))) nd |= bit(i);
      }
      for (int i : uni.impls) {
        const auto& n = uni.nodes[i];
        if ((nd & bit(i)) && (nd & bit(n.lhs))) nd |= bit(n.rhs);  // modus ponens
        uint64_t ext = ensure(mask | bit(n.lhs));
        if (ext & bit(n.rhs)) nd |= bit(i);  // implication introduction
      }
      {
        // Box introduction: extend the hypotheses by the bodies of every
        // derived boxed formula (the maximal extension dominates any subset).
        uint64_t ext_hyps = mask;
        for (int b : uni.boxes)
          if (nd & bit(b)) ext_hyps |= bit(uni.nodes[b].body);
        uint64_t ext = ensure(ext_hyps);
        for (int b : uni.boxes)
          if (ext & bit(uni.nodes[b].body)) nd |= bit(b);
      }
      for (int i : uni.disjs) {
        const auto& n = uni.nodes[i];
        if (!(nd & bit(i))) continue;  // disjunction elimination, derived major premise
        uint64_t la = ensure(mask | bit(n.lhs));
        uint64_t rb = ensure(mask | bit(n.rhs));
        nd |= (la & rb);
      }
      if (nd != d) {
        tables[mask] = nd;
        dirty = true;
      }
    }
  }

  uint64_t run(uint64_t hyps) {
    ensure(hyps);
    do {
      dirty = false;
      round();
    } while (dirty);
    return tables[hyps];
  }
};

uint64_t hyp_mask(const Universe& uni, const std::vector<FormulaPtr>& hyps) {
  uint64_t mask = 0;
  for (const auto& h : hyps) {
    auto it = std::lower_bound(uni.formulas.begin(), uni.formulas.end(), h, FormulaLess{});
    mask |= uint64_t{1} << (it - uni.formulas.begin());
  }
  return mask;
}

}  // namespace

bool decide(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal, DecideStats* stats) {
  Universe uni(universe(goal, hyps));
  Saturation sat(uni);
  uint64_t derived = sat.run(hyp_mask(uni, hyps));
  if (stats) {
    stats->universe_size = uni.size();
    stats->hypothesis_sets = sat.tables.size();
    size_t total = 0;
    for (const auto& [m, d] : sat.tables) total += static_cast<size_t>(__builtin_popcountll(d));
    stats->sequents_derived = total;
  }
  auto it = std::lower_bound(uni.formulas.begin(), uni.formulas.end(), goal, FormulaLess{});
  return (derived >> (it - uni.formulas.begin())) & 1;
}

// -- oracle ------------------------------------------------------------------

namespace {

// Minimal node counts of normal proof terms, per hypothesis mask: for each
// goal index a pair (neutral spine, arbitrary normal form). Values are capped
// at INF = bound + 1.
struct Oracle {
  const Universe& uni;
  int inf;
  struct Row {
    std::vector<int> ne, nf;
  };
  std::map<uint64_t, Row> tables;
  bool dirty = false;

  Oracle(const Universe& u, int bound) : uni(u), inf(bound + 1) {}

  Row& ensure(uint64_t hyps) {
    auto it = tables.find(hyps);
    if (it != tables.end()) return it->second;
    Row row;
    row.ne.assign(uni.size(), inf);
    row.nf.assign(uni.size(), inf);
    for (size_t i = 0; i < uni.size(); ++i)
      if (hyps & (uint64_t{1} << i)) row.ne[i] = 1;  // assumption
    dirty = true;
    return tables.emplace(hyps, std::move(row)).first->second;
  }

  int add(int a, int b) const { return a >= inf || b >= inf ? inf : std::min(inf, a + b); }

  void improve(int& slot, int v) {
    if (v < slot) {
      slot = v;
      dirty = true;
    }
  }

  void round() {
    std::vector<uint64_t> masks;
    masks.reserve(tables.size());
    for (const auto& [m, _] : tables) masks.push_back(m);
    for (uint64_t mask : masks) {
      Row row = tables[mask];  // snapshot; writes go through improve on the live row
      Row& live = tables[mask];
      // Neutral spines: application and projection over a neutral head.
      for (int i : uni.impls) {
        const auto& n = uni.nodes[i];
        improve(live.ne[n.rhs], add(1, add(row.ne[i], row.nf[n.lhs])));
      }
      for (int i : uni.conjs) {
        const auto& n = uni.nodes[i];
        improve(live.ne[n.lhs], add(1, row.ne[i]));
        improve(live.ne[n.rhs], add(1, row.ne[i]));
      }
      for (size_t g = 0; g < uni.size(); ++g) {
        // A neutral term is in particular normal.
        improve(live.nf[g], live.ne[g]);
        // Ex falso over a neutral spine of bottom.
        if (uni.bot >= 0) improve(live.nf[g], add(1, row.ne[uni.bot]));
        // Case split on a derived disjunction.
        for (int d : uni.disjs) {
          const auto& n = uni.nodes[d];
          if (row.ne[d] >= inf) continue;
          const Row& la = ensure(mask | (uint64_t{1} << n.lhs));
          const Row& rb = ensure(mask | (uint64_t{1} << n.rhs));
          improve(live.nf[g], add(1, add(row.ne[d], add(la.nf[g], rb.nf[g]))));
        }
      }
      // Introductions.
      for (size_t g = 0; g < uni.size(); ++g) {
        const auto& n = uni.nodes[g];
        switch (n.kind) {
          case FKind::Top:
            // Canonical witness: unit over a hypothesis, or unit over the
            // closed identity at top when there are none.
            improve(live.nf[g], mask != 0 ? 2 : 3);
            break;
          case FKind::Impl: {
            const Row& ext = ensure(mask | (uint64_t{1} << n.lhs));
            improve(live.nf[g], add(1, ext.nf[n.rhs]));
            break;
          }
          case FKind::Conj:
            improve(live.nf[g], add(1, add(row.nf[n.lhs], row.nf[n.rhs])));
            break;
          case FKind::Disj:
            improve(live.nf[g], add(1, row.nf[n.lhs]));
            improve(live.nf[g], add(1, row.nf[n.rhs]));
            break;
          case FKind::Box: {
            // Box introduction over a subset of available boxed arguments;
            // arguments are neutral (a boxed argument would be a merge redex).
            std::vector<int> avail;
            for (int b : uni.boxes)
              if (row.ne[b] < inf) avail.push_back(b);
            size_t limit = avail.size() <= 12 ? (size_t{1} << avail.size()) : (size_t{1} << 12);
            for (size_t s = 0; s < limit; ++s) {
              int cost = 1;
              uint64_t ext_hyps = mask;
              for (size_t a = 0; a < avail.size(); ++a)
                if (s & (size_t{1} << a)) {
                  cost = add(cost, row.ne[avail[a]]);
                  ext_hyps |= uint64_t{1} << uni.nodes[avail[a]].body;
                }
              if (cost >= inf) continue;
              const Row& ext = ensure(ext_hyps);
              improve(live.nf[g], add(cost, ext.nf[n.body]));
            }
            break;
          }
          default: break;
        }
      }
    }
  }

  bool run(uint64_t hyps, int goal, int bound) {
    ensure(hyps);
    do {
      dirty = false;
      round();
    } while (dirty);
    return tables[hyps].nf[goal] <= bound;
  }
};

}  // namespace

bool oracle_provable(const std::vector<FormulaPtr>& hyps, const FormulaPtr& goal, int size_bound) {
  Universe uni(universe(goal, hyps));
  Oracle oracle(uni, size_bound);
  auto it = std::lower_bound(uni.formulas.begin(), uni.formulas.end(), goal, FormulaLess{});
  return oracle.run(hyp_mask(uni, hyps), static_cast<int>(it - uni.formulas.begin()), size_bound);
}

// -- enumeration ---------------------------------------------------------

namespace {

struct Enumerator {
  std::vector<std::vector<FormulaPtr>> by_size;
  const std::function<bool(const FormulaPtr&)>& fn;
  bool stopped = false;

  explicit Enumerator(const std::function<bool(const FormulaPtr&)>& f) : fn(f) {}

  bool emit(const FormulaPtr& f, bool keep) {
    if (keep) by_size.back().push_back(f);
    if (!fn(f)) stopped = true;
    return !stopped;
  }

  void run(const std::vector<std::string>& atoms, int max_size) {
    for (int size = 0; size <= max_size && !stopped; ++size) {
      bool keep = size < max_size;  // the last layer is streamed only
      by_size.emplace_back();
      if (size == 0) {
        for (const auto& a : atoms)
          if (!emit(Formula::atom(a), keep)) return;
        if (!emit(Formula::bot(), keep)) return;
        if (!emit(Formula::top(), keep)) return;
        continue;
      }
      for (const auto& f : by_size[size - 1])
        if (!emit(Formula::box(f), keep)) return;
      for (int op = 0; op < 3; ++op) {
        for (int i = 0; i + 1 <= size && i <= size - 1; ++i) {
          int j = size - 1 - i;
          if (j >= size) continue;  // both strictly smaller layers exist
          for (const auto& l : by_size[i]) {
            for (const auto& r : by_size[j]) {
              FormulaPtr f = op == 0   ? Formula::impl(l, r)
                             : op == 1 ? Formula::conj(l, r)
                                       : Formula::disj(l, r);
              if (!emit(f, keep)) return;
            }
          }
        }
      }
    }
  }
};

}  // namespace

void enumerate_formulas(const std::vector<std::string>& atoms, int max_size,
                        const std::function<bool(const FormulaPtr&)>& fn) {
  Enumerator e(fn);
  e.run(atoms, max_size);
}

std::vector<FormulaPtr> enumerate_formulas_list(const std::vector<std::string>& atoms,
                                                int max_size) {
  std::vector<FormulaPtr> out;
  enumerate_formulas(atoms, max_size, [&](const FormulaPtr& f) {
    out.push_back(f);
    return true;
  });
  return out;
}

// -- metatheory ---------------------------------------------------------

const char* meta_property_name(MetaProperty p) {
  switch (p) {
    case MetaProperty::Disjunction: return "disjunction";
    case MetaProperty::WeakDisjunction: return "weak-disjunction";
    case MetaProperty::BoxPrimality: return "box-primality";
    case MetaProperty::Reflection: return "reflection";
    case MetaProperty::Consistency: return "consistency";
  }
  return "?";
}

std::optional<MetaProperty> meta_property_from_name(const std::string& name) {
  static const MetaProperty all[] = {MetaProperty::Disjunction, MetaProperty::WeakDisjunction,
                                     MetaProperty::BoxPrimality, MetaProperty::Reflection,
                                     MetaProperty::Consistency};
  for (MetaProperty p : all)
    if (name == meta_property_name(p)) return p;
  return std::nullopt;
}

namespace {

// True when the property holds for the trigger formula (or it does not
// trigger); called only on shapes that match.
bool meta_holds(MetaProperty prop, const FormulaPtr& f) {
  switch (prop) {
    case MetaProperty::Disjunction: {
      if (!decide({}, f)) return true;
      return decide({}, f->lhs()) || decide({}, f->rhs());
    }
    case MetaProperty::WeakDisjunction: {
      if (!decide({}, f)) return true;
      return decide({}, Formula::box(f->body()->lhs())) ||
             decide({}, Formula::box(f->body()->rhs()));
    }
    case MetaProperty::BoxPrimality: {
      if (!decide({}, f)) return true;
      return decide({}, f->lhs()->body()) || decide({}, f->rhs()->body());
    }
    case MetaProperty::Reflection: {
      if (!decide({}, f)) return true;
      return decide({}, f->body());
    }
    case MetaProperty::Consistency:
      return !decide({}, Formula::bot());
  }
  return false;
}

bool meta_triggers(MetaProperty prop, const FormulaPtr& f) {
  switch (prop) {
    case MetaProperty::Disjunction:
      return f->kind() == FKind::Disj;
    case MetaProperty::WeakDisjunction:
      return f->kind() == FKind::Box && f->body()->kind() == FKind::Disj;
    case MetaProperty::BoxPrimality:
      return f->kind() == FKind::Disj && f->lhs()->kind() == FKind::Box &&
             f->rhs()->kind() == FKind::Box;
    case MetaProperty::Reflection:
      return f->kind() == FKind::Box;
    case MetaProperty::Consistency:
      return false;
  }
  return false;
}

}  // namespace

MetaReport check_metatheory(MetaProperty property, const std::vector<std::string>& atoms,
                            int max_size, bool parallel) {
  (void)parallel;
  MetaReport report;
  report.property = property;
  {
    std::string as;
    for (size_t i = 0; i < atoms.size(); ++i) as += (i ? "," : "") + atoms[i];
    report.universe_desc = "formulas over {" + as + "} with at most " +
                           std::to_string(max_size) + " connectives";
  }
  if (property == MetaProperty::Consistency) {
    report.checked = 1;
    if (!meta_holds(property, Formula::bot())) report.counterexamples.push_back("bot");
    return report;
  }
  std::vector<FormulaPtr> batch;
  auto flush = [&]() {
    uint64_t checked = 0;
    std::vector<std::string> bad;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : checked) if (parallel)
#endif
    for (size_t i = 0; i < batch.size(); ++i) {
      ++checked;
      if (!meta_holds(property, batch[i])) {
#ifdef _OPENMP
#pragma omp critical
#endif
        bad.push_back(print_formula(batch[i]));
      }
    }
    report.checked += checked;
    std::sort(bad.begin(), bad.end());
    report.counterexamples.insert(report.counterexamples.end(), bad.begin(), bad.end());
    batch.clear();
  };
  enumerate_formulas(atoms, max_size, [&](const FormulaPtr& f) {
    if (meta_triggers(property, f)) {
      batch.push_back(f);
      if (batch.size() >= 4096) flush();
    }
    return true;
  });
  flush();
  return report;
}

}  // namespace iel
