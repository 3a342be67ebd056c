// Classical propositional engine: valuations, entailment, prime implicants,
// essential atoms, least-atom equivalents, prime subvaluations.
#ifndef ATC_BOOLEAN_HPP_
#define ATC_BOOLEAN_HPP_

#include <cstdint>
#include <vector>

#include "atc/syntax.hpp"

namespace atc {

// Valuations are bit patterns over the universe atom order: bit i set means
// atom i is true. Enumeration is exact and capped.
constexpr int kMaxEnumAtoms = 20;

// A consistent conjunction of literals, doubling as a partial valuation.
// `atoms` marks which atoms are fixed, `values` their polarity.
struct Term {
  uint32_t atoms = 0;
  uint32_t values = 0;  // subset of atoms

  bool operator==(const Term& o) const {
    return atoms == o.atoms && values == o.values;
  }
  bool operator<(const Term& o) const {
    return atoms != o.atoms ? atoms < o.atoms : values < o.values;
  }
  // Literal-set inclusion: every literal of this appears in o.
  bool subterm_of(const Term& o) const {
    return (atoms & ~o.atoms) == 0 && ((values ^ o.values) & atoms) == 0;
  }
  // Does total valuation v extend this partial assignment?
  bool holds_in(uint32_t v) const { return ((v ^ values) & atoms) == 0; }
  int size() const { return __builtin_popcount(atoms); }

  static Term of_valuation(uint32_t v, int num_atoms) {
    return Term{num_atoms >= 32 ? ~0u : (1u << num_atoms) - 1, v};
  }
  Formula to_formula() const;  // empty term renders as true
};

// Truth table of a Boolean formula over the first n atoms of a universe.
class TruthTable {
 public:
  TruthTable() = default;
  TruthTable(int num_atoms, bool fill);
  static TruthTable of(const Formula& f, int num_atoms);

  int num_atoms() const { return n_; }
  bool test(uint32_t v) const {
    return (bits_[v >> 6] >> (v & 63)) & 1;
  }
  void set(uint32_t v, bool b);
  uint32_t count() const;
  bool none() const;
  bool all() const;
  bool subset_of(const TruthTable& o) const;

  TruthTable operator&(const TruthTable& o) const;
  TruthTable operator|(const TruthTable& o) const;
  TruthTable operator~() const;
  bool operator==(const TruthTable& o) const {
    return n_ == o.n_ && bits_ == o.bits_;
  }

  std::vector<uint32_t> valuations() const;  // ascending bit patterns

 private:
  int n_ = 0;
  std::vector<uint64_t> bits_;
};

bool eval(const Formula& f, uint32_t valuation);

std::vector<uint32_t> valuations_of(const Formula& f, const Universe& u);
bool cpl_entails(const std::vector<Formula>& gamma, const Formula& phi,
                 const Universe& u);
bool cpl_entails(const Formula& gamma, const Formula& phi, const Universe& u);
bool cpl_taut(const Formula& phi, const Universe& u);
bool cpl_sat(const Formula& phi, const Universe& u);
bool cpl_equiv(const Formula& a, const Formula& b, const Universe& u);

// IP(φ): complete set of minimal terms implying φ; empty for unsatisfiable
// φ; the empty term for a tautology.
std::vector<Term> prime_implicants(const Formula& f, const Universe& u);

uint32_t essential_atoms(const Formula& f, const Universe& u);

// An equivalent of φ mentioning exactly its essential atoms (disjunction of
// prime implicants; true/false for non-contingent φ).
Formula least_equivalent(const Formula& f, const Universe& u);

// Smallest DNF of any formula lying between `on` and `on ∨ dc`: a prime
// implicant cover of the on-set with the dc-set free.
Formula minimize_with_dont_cares(const Formula& on, const Formula& dc,
                                 const Universe& u);

// Does every world of W extending v satisfy φ? (v ⊨_W φ)
bool subval_satisfies(const Term& v, const std::vector<uint32_t>& W,
                      const Formula& f);
bool subval_forces_literal(const Term& v, const std::vector<uint32_t>& W,
                           int atom, bool positive);

// base(φ, W): minimal subvaluations over the essential atoms of φ that
// satisfy φ modulo W.
std::vector<Term> prime_subvaluations(const Formula& f,
                                      const std::vector<uint32_t>& W,
                                      const Universe& u);

}  // namespace atc

#endif  // ATC_BOOLEAN_HPP_
