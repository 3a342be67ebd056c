// Postulate checks for the contraction operators and a seeded fuzz harness
// over generated theories.
#ifndef ATC_POSTULATES_HPP_
#define ATC_POSTULATES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "atc/contract_syn.hpp"
#include "atc/syntax.hpp"

namespace atc {

enum class Postulate {
  Monotonicity,
  Preservation,
  Success,
  Equivalences,
  Recovery,
  Disjunctive,
  ModularityPreservation,
};

const char* postulate_name(Postulate p);
bool postulate_from_name(const std::string& name, Postulate& out);

struct PostulateReport {
  Postulate id;
  bool holds = true;
  bool applicable = true;    // false when the postulate's guard is not met
  std::string witness;       // counter-instance description when it fails
};

// Single-theory postulates (everything except Equivalences/Disjunctive).
PostulateReport check_postulate(const Theory& th, const Law& law,
                                Postulate which,
                                const ContractOptions& opts = {});

// Equivalences and Disjunctive compare two theories.
PostulateReport check_postulate_pair(const Theory& th1, const Theory& th2,
                                     const Law& law1, const Law& law2,
                                     Postulate which,
                                     const ContractOptions& opts = {});

struct FuzzConfig {
  int count = 200;       // generated theories
  uint64_t seed = 1;
  int max_atoms = 3;
  int max_actions = 2;
  bool modular_only = true;
  std::vector<Postulate> postulates = {
      Postulate::Monotonicity, Postulate::Preservation, Postulate::Success,
      Postulate::Recovery, Postulate::ModularityPreservation};
};

struct FuzzCase {
  int theory_id;
  std::string theory_text;
  std::string law_text;
  Postulate postulate;
  bool holds;
  bool applicable;
  std::string witness;
};

struct FuzzSummary {
  int theories = 0;
  int cases = 0;
  int failures = 0;
  std::vector<FuzzCase> reports;
};

FuzzSummary fuzz_postulates(const FuzzConfig& config);

// Deterministic generator used by the harness; exposed for tests.
Theory random_theory(uint64_t seed, int max_atoms, int max_actions,
                     bool modular_only);

}  // namespace atc

#endif  // ATC_POSTULATES_HPP_
