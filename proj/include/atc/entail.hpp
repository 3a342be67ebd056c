// Entailment of laws from theories, modularity checking, and the brute-force
// semantic oracle.
#ifndef ATC_ENTAIL_HPP_
#define ATC_ENTAIL_HPP_

#include <utility>
#include <vector>

#include "atc/kripke.hpp"
#include "atc/syntax.hpp"

namespace atc {

struct ModularityReport {
  bool modular = true;
  // Worlds of the big model where an executability law has no outgoing
  // arrow, paired with the law they break.
  std::vector<std::pair<uint32_t, Law>> failing_worlds;
  // One ¬term(w) witness per failing world.
  std::vector<Formula> implicit_statics;
  // CPL-simplified conjunction of the witnesses; True when modular.
  Formula summary = Formula::truth();
};

// Θ is modular iff its big model is a model of Θ.
ModularityReport is_modular(const Theory& th);

struct OracleCaps {
  int max_atoms = 3;
  int max_actions = 2;
};

struct EntailOptions {
  enum class NonModular { Error, Oracle };
  NonModular on_non_modular = NonModular::Oracle;
  OracleCaps caps;
};

// Law entailment. Modular theories are decided on the big model; otherwise
// the oracle takes over (or a PreconditionError is raised, per options).
bool entails(const Theory& th, const Law& law, const EntailOptions& opts = {});

// Global consequence by enumeration. Small inputs get the literal
// every-model enumeration; larger ones an equivalent per-world analysis
// (modal depth at most one). Caps guard the blowup.
bool oracle_entails(const Theory& th, const Formula& f,
                    const OracleCaps& caps = {});

// The literal enumeration alone; requires at most 2 atoms and 1 action.
bool oracle_entails_full(const Theory& th, const Formula& f);

int modal_depth(const Formula& f);

// Every model of Θ whose world set is exactly val(S). Throws ResourceError
// once more than `limit` models exist.
std::vector<KripkeModel> canonical_models(const Theory& th,
                                          size_t limit = 1u << 20);

}  // namespace atc

#endif  // ATC_ENTAIL_HPP_
