#include "atc/contract_sem.hpp"

#include <algorithm>

#include "atc/boolean.hpp"

namespace atc {

namespace {

// Literals guaranteed after `action` at w across the model set: those true
// at every successor of w in every member. When w has no successors
// anywhere, the action's global targets stand in; with no arrows at all the
// set is empty and only inertia speaks.
Term guaranteed_effects(uint32_t w, int action, const ModelSet& mset,
                        int num_atoms) {
  uint32_t full = num_atoms >= 32 ? ~0u : (1u << num_atoms) - 1;
  Term guar{full, 0};
  bool first = true;
  bool any_local = false;
  for (const auto& mi : mset.models) {
    for (const auto& e : mi.rel[action]) {
      if (e.first != w) continue;
      any_local = true;
      if (first) {
        guar = Term::of_valuation(e.second, num_atoms);
        first = false;
      } else {
        uint32_t agree = ~(guar.values ^ e.second);
        guar.atoms &= agree & full;
        guar.values &= guar.atoms;
      }
    }
  }
  if (any_local) return guar;
  first = true;
  for (const auto& mi : mset.models) {
    for (const auto& e : mi.rel[action]) {
      if (first) {
        guar = Term::of_valuation(e.second, num_atoms);
        first = false;
      } else {
        uint32_t agree = ~(guar.values ^ e.second);
        guar.atoms &= agree & full;
        guar.values &= guar.atoms;
      }
    }
  }
  if (first) return Term{0, 0};  // the action never moves anywhere
  return guar;
}

bool term_has_literal(const Term& t, int atom, bool positive) {
  if (!(t.atoms & (1u << atom))) return false;
  return (((t.values >> atom) & 1) != 0) == positive;
}

}  // namespace

std::vector<uint32_t> relevant_target_worlds(uint32_t w, const Law& law,
                                             const KripkeModel& m,
                                             const ModelSet& mset) {
  if (law.kind != Law::Kind::Effect)
    throw ArgumentError("relevant targets are defined for effect laws");
  if (!m.has_world(w)) throw ArgumentError("not a world of the model");
  if (!mset.contains(m))
    throw ArgumentError("model must belong to the model set");
  std::vector<uint32_t> out;
  if (!eval(law.pre, w)) return out;
  const auto& W = m.worlds;
  int n = m.universe.num_atoms();
  Formula neg_post = Formula::mk_not(law.post);
  std::vector<Term> base = prime_subvaluations(neg_post, W, m.universe);
  Term guar = guaranteed_effects(w, law.action, mset, n);

  for (uint32_t t : W) {
    if (eval(law.post, t)) continue;
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      bool pos = (t >> i) & 1;
      bool changed = ((w >> i) & 1) != pos;
      // forced by ¬ψ modulo W through some base element inside t
      bool by_base = false;
      for (const auto& v : base) {
        if (!v.holds_in(t)) continue;
        if (subval_forces_literal(v, W, i, pos)) {
          by_base = true;
          break;
        }
      }
      if (by_base) continue;
      if (changed)
        ok = term_has_literal(guar, i, pos);
      else
        ok = !term_has_literal(guar, i, !pos);
    }
    if (ok) out.push_back(t);
  }
  return out;
}

std::vector<KripkeModel> contract_exec_model(const KripkeModel& m,
                                             const Law& law, Metric metric) {
  if (law.kind != Law::Kind::Exec)
    throw ArgumentError("expected an executability law");
  if (!satisfies_law(m, law)) return {m};
  std::vector<KripkeModel> cands;
  for (uint32_t w : m.worlds) {
    if (!eval(law.pre, w)) continue;
    KripkeModel m2 = m;
    m2.remove_edges_from(law.action, w);
    if (m2 == m) continue;  // no arrows to drop here
    cands.push_back(std::move(m2));
  }
  return minimal_under(m, cands, metric);
}

std::vector<KripkeModel> contract_effect_model(const KripkeModel& m,
                                               const ModelSet& mset,
                                               const Law& law, Metric metric) {
  if (law.kind != Law::Kind::Effect)
    throw ArgumentError("expected an effect law");
  if (!satisfies_law(m, law)) return {m};
  std::vector<KripkeModel> cands;
  for (uint32_t w : m.worlds) {
    if (!eval(law.pre, w)) continue;
    for (uint32_t t : relevant_target_worlds(w, law, m, mset)) {
      if (m.has_edge(law.action, w, t)) continue;
      KripkeModel m2 = m;
      m2.add_edge(law.action, w, t);
      cands.push_back(std::move(m2));
    }
  }
  return minimal_under(m, cands, metric);
}

std::vector<KripkeModel> contract_static_model(const KripkeModel& m,
                                               const Formula& phi,
                                               Metric metric) {
  if (!phi.is_boolean()) throw ArgumentError("expected a Boolean formula");
  if (!globally_satisfies(m, phi)) return {m};
  std::vector<KripkeModel> cands;
  for (uint32_t v : valuations_of(Formula::mk_not(phi), m.universe)) {
    if (m.has_world(v)) continue;
    KripkeModel m2 = m;
    m2.add_world(v);
    cands.push_back(std::move(m2));
  }
  return minimal_under(m, cands, metric);
}

ContractionOutcome contract_model_set(const ModelSet& mset, const Law& law,
                                      Metric metric) {
  ContractionOutcome out;
  for (const auto& m : mset.models) {
    std::vector<KripkeModel> singles;
    switch (law.kind) {
      case Law::Kind::Static:
        singles = contract_static_model(m, law.pre, metric);
        break;
      case Law::Kind::Effect:
        singles = contract_effect_model(m, mset, law, metric);
        break;
      case Law::Kind::Exec:
        singles = contract_exec_model(m, law, metric);
        break;
    }
    for (const auto& m2 : singles) {
      ModelSet expanded = mset;
      expanded.insert(m2);
      bool dup = false;
      for (const auto& existing : out.model_sets)
        if (existing == expanded) {
          dup = true;
          break;
        }
      if (!dup) out.model_sets.push_back(std::move(expanded));
    }
  }
  return out;
}

}  // namespace atc
