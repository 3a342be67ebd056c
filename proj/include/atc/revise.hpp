// Semantic revision by new laws: single-model repair per law kind and the
// set-level operation combining expansion and revision.
#ifndef ATC_REVISE_HPP_
#define ATC_REVISE_HPP_

#include <vector>

#include "atc/contract_sem.hpp"
#include "atc/kripke.hpp"

namespace atc {

struct RevisionOutcome {
  ModelSet models;  // every member satisfies the revising law
};

// Remove the ¬φ worlds (with their arrows); if none survive, restart from
// the closest φ valuations.
std::vector<KripkeModel> revise_static_model(const KripkeModel& m,
                                             const Formula& phi,
                                             Metric metric);

// Remove the violating arrows.
std::vector<KripkeModel> revise_effect_model(const KripkeModel& m,
                                             const Law& law, Metric metric);

// Give every uncovered φ-world one arrow into a relevant target of the
// retracted inexecutability φ → [a]⊥; empty when some world has no target.
std::vector<KripkeModel> revise_exec_model(const KripkeModel& m,
                                           const ModelSet& mset,
                                           const Law& law, Metric metric);

// Expansion when some member already satisfies the law, otherwise the union
// of single-model revisions.
RevisionOutcome revise_model_set(const ModelSet& mset, const Law& law,
                                 Metric metric);

}  // namespace atc

#endif  // ATC_REVISE_HPP_
