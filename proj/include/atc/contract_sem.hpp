// Semantic contraction of laws from single models and model sets, with the
// relevant-target-world computation used by effect contraction and by
// executability revision.
#ifndef ATC_CONTRACT_SEM_HPP_
#define ATC_CONTRACT_SEM_HPP_

#include <vector>

#include "atc/kripke.hpp"

namespace atc {

// A set of candidate model sets, each of the form M ∪ {M'}.
struct ContractionOutcome {
  std::vector<ModelSet> model_sets;
};

// Worlds eligible to receive a new `law.action` arrow from w without
// destroying unrelated effects. A literal that changes from w to w' must be
// forced, by a prime subvaluation of ¬ψ modulo the worlds or by an effect
// guaranteed at w across the model set; a literal that persists must either
// be forced the same way or not be contradicted by a guaranteed effect.
// Guaranteed effects fall back to the action's global behaviour when w has
// no arrows in any model of the set.
std::vector<uint32_t> relevant_target_worlds(uint32_t w, const Law& law,
                                             const KripkeModel& m,
                                             const ModelSet& mset);

// Drop all arrows of one φ-world; empty iff φ is unsatisfiable in W.
std::vector<KripkeModel> contract_exec_model(const KripkeModel& m,
                                             const Law& law, Metric metric);

// Add one arrow into a relevant target world.
std::vector<KripkeModel> contract_effect_model(const KripkeModel& m,
                                               const ModelSet& mset,
                                               const Law& law, Metric metric);

// Add one ¬φ valuation as a fresh world; arrows untouched.
std::vector<KripkeModel> contract_static_model(const KripkeModel& m,
                                               const Formula& phi,
                                               Metric metric);

// Set-level contraction: every Mset ∪ {M'} with M' a minimal contraction of
// some member.
ContractionOutcome contract_model_set(const ModelSet& mset, const Law& law,
                                      Metric metric);

}  // namespace atc

#endif  // ATC_CONTRACT_SEM_HPP_
