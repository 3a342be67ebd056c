#include "atc/revise.hpp"

#include <algorithm>

#include "atc/boolean.hpp"

namespace atc {

std::vector<KripkeModel> revise_static_model(const KripkeModel& m,
                                             const Formula& phi,
                                             Metric metric) {
  (void)metric;  // both metrics agree here
  if (!phi.is_boolean()) throw ArgumentError("expected a Boolean formula");
  if (!cpl_sat(phi, m.universe))
    throw ArgumentError("no model can satisfy an inconsistent static law");
  std::vector<uint32_t> survivors;
  for (uint32_t w : m.worlds)
    if (eval(phi, w)) survivors.push_back(w);
  if (!survivors.empty()) {
    if (survivors.size() == m.worlds.size()) return {m};
    KripkeModel out = KripkeModel::empty(m.universe);
    out.worlds = survivors;
    for (size_t a = 0; a < m.rel.size(); ++a)
      for (const auto& e : m.rel[a])
        if (out.has_world(e.first) && out.has_world(e.second))
          out.rel[a].push_back(e);
    return {out};
  }
  // Nothing survives: the closest repairs keep one φ valuation.
  std::vector<KripkeModel> out;
  for (uint32_t v : valuations_of(phi, m.universe)) {
    KripkeModel m2 = KripkeModel::empty(m.universe);
    m2.worlds = {v};
    out.push_back(std::move(m2));
  }
  return out;
}

std::vector<KripkeModel> revise_effect_model(const KripkeModel& m,
                                             const Law& law, Metric metric) {
  (void)metric;  // the violating arrows are forced, the rest stays
  if (law.kind != Law::Kind::Effect)
    throw ArgumentError("expected an effect law");
  KripkeModel out = m;
  auto& edges = out.rel[law.action];
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [&](const Edge& e) {
                               return eval(law.pre, e.first) &&
                                      !eval(law.post, e.second);
                             }),
              edges.end());
  return {out};
}

std::vector<KripkeModel> revise_exec_model(const KripkeModel& m,
                                           const ModelSet& mset,
                                           const Law& law, Metric metric) {
  (void)metric;  // one arrow per uncovered world under either metric
  if (law.kind != Law::Kind::Exec)
    throw ArgumentError("expected an executability law");
  std::vector<uint32_t> uncovered;
  for (uint32_t w : m.worlds) {
    if (!eval(law.pre, w)) continue;
    if (m.successors(law.action, w).empty()) uncovered.push_back(w);
  }
  if (uncovered.empty()) return {m};
  Law inexec = Law::effect(law.pre, law.action, Formula::falsity());
  std::vector<std::vector<uint32_t>> targets;
  for (uint32_t w : uncovered) {
    targets.push_back(relevant_target_worlds(w, inexec, m, mset));
    if (targets.back().empty()) return {};  // no repair at fixed worlds
  }
  std::vector<KripkeModel> out;
  std::vector<size_t> pick(uncovered.size(), 0);
  for (;;) {
    KripkeModel m2 = m;
    for (size_t i = 0; i < uncovered.size(); ++i)
      m2.add_edge(law.action, uncovered[i], targets[i][pick[i]]);
    out.push_back(std::move(m2));
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == targets[i].size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size()) break;
  }
  return out;
}

RevisionOutcome revise_model_set(const ModelSet& mset, const Law& law,
                                 Metric metric) {
  if (mset.models.empty())
    throw ArgumentError("revision needs a nonempty model set");
  RevisionOutcome out;
  bool some_model = false;
  for (const auto& m : mset.models)
    if (satisfies_law(m, law)) {
      some_model = true;
      break;
    }
  if (some_model) {  // expansion: drop the violators
    for (const auto& m : mset.models)
      if (satisfies_law(m, law)) out.models.insert(m);
    return out;
  }
  for (const auto& m : mset.models) {
    std::vector<KripkeModel> revised;
    switch (law.kind) {
      case Law::Kind::Static:
        revised = revise_static_model(m, law.pre, metric);
        break;
      case Law::Kind::Effect:
        revised = revise_effect_model(m, law, metric);
        break;
      case Law::Kind::Exec:
        revised = revise_exec_model(m, mset, law, metric);
        break;
    }
    for (const auto& m2 : revised) out.models.insert(m2);
  }
  if (out.models.models.empty())
    throw PreconditionError("revision impossible at fixed worlds");
  return out;
}

}  // namespace atc
