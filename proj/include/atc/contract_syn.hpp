// Syntactic contraction operators for the three law kinds, the classical
// static-law contraction they build on, and theory equivalence.
#ifndef ATC_CONTRACT_SYN_HPP_
#define ATC_CONTRACT_SYN_HPP_

#include <vector>

#include "atc/entail.hpp"
#include "atc/syntax.hpp"

namespace atc {

struct TheoryFamily {
  std::vector<Theory> theories;
};

struct ContractOptions {
  // Bypass the modularity precondition (the algorithms are then run on the
  // oracle's entailment answers; used to reproduce known counterexamples).
  bool allow_non_modular = false;
  EntailOptions entail;
};

// Inclusion-minimal F ⊆ E_a with S ∪ F entailing the law, plus their union.
struct EffectSupports {
  std::vector<std::vector<Law>> supports;
  std::vector<Law> union_laws;
};
EffectSupports minimum_effect_supports(const Theory& th, const Law& law);

TheoryFamily contract_exec(const Theory& th, const Law& law,
                           const ContractOptions& opts = {});
TheoryFamily contract_effect(const Theory& th, const Law& law,
                             const ContractOptions& opts = {});

// Valuation-additive classical contraction: one result per added ¬φ world.
std::vector<std::vector<Formula>> classical_contract(
    const std::vector<Formula>& statics, const Formula& phi,
    const Universe& u);

TheoryFamily contract_static(const Theory& th, const Formula& phi,
                             const ContractOptions& opts = {});

// Dispatch over the law kind.
TheoryFamily contract(const Theory& th, const Law& law,
                      const ContractOptions& opts = {});

// Mutual entailment of all laws, over a common universe.
bool theory_equiv(const Theory& a, const Theory& b,
                  const EntailOptions& opts = {});

}  // namespace atc

#endif  // ATC_CONTRACT_SYN_HPP_
