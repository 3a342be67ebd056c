#include "atc/boolean.hpp"

#include <algorithm>
#include <cassert>

namespace atc {

Formula Term::to_formula() const {
  Formula out;
  bool first = true;
  for (int i = 0; i < 32; ++i) {
    if (!(atoms & (1u << i))) continue;
    Formula l = Formula::lit(i, values & (1u << i));
    out = first ? l : Formula::mk_and(out, l);
    first = false;
  }
  return first ? Formula::truth() : out;
}

// -------------------------------------------------------------- TruthTable

namespace {
void check_cap(int n) {
  if (n > kMaxEnumAtoms)
    throw ResourceError("valuation enumeration over " + std::to_string(n) +
                        " atoms exceeds the cap of " +
                        std::to_string(kMaxEnumAtoms));
}
size_t block_count(int n) {
  uint64_t rows = 1ull << n;
  return static_cast<size_t>((rows + 63) / 64);
}
uint64_t last_block_mask(int n) {
  uint64_t rows = 1ull << n;
  return rows % 64 == 0 ? ~0ull : (1ull << (rows % 64)) - 1;
}
}  // namespace

TruthTable::TruthTable(int num_atoms, bool fill) : n_(num_atoms) {
  check_cap(n_);
  bits_.assign(block_count(n_), fill ? ~0ull : 0ull);
  if (fill) bits_.back() &= last_block_mask(n_);
}

TruthTable TruthTable::of(const Formula& f, int num_atoms) {
  check_cap(num_atoms);
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
      return TruthTable(num_atoms, true);
    case K::False:
      return TruthTable(num_atoms, false);
    case K::Atom: {
      TruthTable t(num_atoms, false);
      int i = f.index();
      assert(i < num_atoms);
      uint64_t rows = 1ull << num_atoms;
      if (i >= 6) {
        // whole 64-bit blocks alternate in runs of 2^(i-6)
        uint64_t run = 1ull << (i - 6);
        for (uint64_t b = 0; b < rows / 64; ++b)
          if ((b / run) & 1) t.bits_[b] = ~0ull;
      } else {
        // pattern repeats within a block
        uint64_t pat = 0;
        for (int v = 0; v < 64; ++v)
          if ((v >> i) & 1) pat |= 1ull << v;
        for (auto& b : t.bits_) b = pat;
      }
      t.bits_.back() &= last_block_mask(num_atoms);
      return t;
    }
    case K::Not:
      return ~of(f.left(), num_atoms);
    case K::And:
      return of(f.left(), num_atoms) & of(f.right(), num_atoms);
    case K::Or:
      return of(f.left(), num_atoms) | of(f.right(), num_atoms);
    case K::Imp:
      return ~of(f.left(), num_atoms) | of(f.right(), num_atoms);
    case K::Iff: {
      TruthTable a = of(f.left(), num_atoms), b = of(f.right(), num_atoms);
      return (a & b) | (~a & ~b);
    }
    default:
      throw ArgumentError("modal formula where a Boolean one is required");
  }
}

void TruthTable::set(uint32_t v, bool b) {
  if (b)
    bits_[v >> 6] |= 1ull << (v & 63);
  else
    bits_[v >> 6] &= ~(1ull << (v & 63));
}

uint32_t TruthTable::count() const {
  uint32_t c = 0;
  for (uint64_t b : bits_) c += __builtin_popcountll(b);
  return c;
}

bool TruthTable::none() const {
  for (uint64_t b : bits_)
    if (b) return false;
  return true;
}

bool TruthTable::all() const {
  for (size_t i = 0; i + 1 < bits_.size(); ++i)
    if (bits_[i] != ~0ull) return false;
  return bits_.back() == last_block_mask(n_);
}

bool TruthTable::subset_of(const TruthTable& o) const {
  for (size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~o.bits_[i]) return false;
  return true;
}

TruthTable TruthTable::operator&(const TruthTable& o) const {
  TruthTable t(n_, false);
  for (size_t i = 0; i < bits_.size(); ++i) t.bits_[i] = bits_[i] & o.bits_[i];
  return t;
}

TruthTable TruthTable::operator|(const TruthTable& o) const {
  TruthTable t(n_, false);
  for (size_t i = 0; i < bits_.size(); ++i) t.bits_[i] = bits_[i] | o.bits_[i];
  return t;
}

TruthTable TruthTable::operator~() const {
  TruthTable t(n_, false);
  for (size_t i = 0; i < bits_.size(); ++i) t.bits_[i] = ~bits_[i];
  t.bits_.back() &= last_block_mask(n_);
  return t;
}

std::vector<uint32_t> TruthTable::valuations() const {
  std::vector<uint32_t> out;
  uint64_t rows = 1ull << n_;
  for (uint64_t v = 0; v < rows; ++v)
    if (test(static_cast<uint32_t>(v))) out.push_back(static_cast<uint32_t>(v));
  return out;
}

// -------------------------------------------------------------- operations

bool eval(const Formula& f, uint32_t valuation) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return (valuation >> f.index()) & 1;
    case K::Not: return !eval(f.left(), valuation);
    case K::And: return eval(f.left(), valuation) && eval(f.right(), valuation);
    case K::Or: return eval(f.left(), valuation) || eval(f.right(), valuation);
    case K::Imp: return !eval(f.left(), valuation) || eval(f.right(), valuation);
    case K::Iff: return eval(f.left(), valuation) == eval(f.right(), valuation);
    default:
      throw ArgumentError("modal formula where a Boolean one is required");
  }
}

std::vector<uint32_t> valuations_of(const Formula& f, const Universe& u) {
  return TruthTable::of(f, u.num_atoms()).valuations();
}

bool cpl_entails(const std::vector<Formula>& gamma, const Formula& phi,
                 const Universe& u) {
  TruthTable g(u.num_atoms(), true);
  for (const auto& f : gamma) g = g & TruthTable::of(f, u.num_atoms());
  return g.subset_of(TruthTable::of(phi, u.num_atoms()));
}

bool cpl_entails(const Formula& gamma, const Formula& phi, const Universe& u) {
  return cpl_entails(std::vector<Formula>{gamma}, phi, u);
}

bool cpl_taut(const Formula& phi, const Universe& u) {
  return TruthTable::of(phi, u.num_atoms()).all();
}

bool cpl_sat(const Formula& phi, const Universe& u) {
  return !TruthTable::of(phi, u.num_atoms()).none();
}

bool cpl_equiv(const Formula& a, const Formula& b, const Universe& u) {
  return TruthTable::of(a, u.num_atoms()) == TruthTable::of(b, u.num_atoms());
}

namespace {

// All valuations extending the term satisfy the table.
bool term_implies(const Term& t, const TruthTable& tab, int n) {
  uint32_t free_mask = ((n >= 32 ? ~0u : (1u << n) - 1)) & ~t.atoms;
  // iterate subsets of free_mask
  uint32_t sub = 0;
  for (;;) {
    if (!tab.test(t.values | sub)) return false;
    if (sub == free_mask) return true;
    sub = (sub - free_mask) & free_mask;
  }
}

void enumerate_terms_over(uint32_t atom_choices, int n,
                          const TruthTable& tab,
                          std::vector<Term>& minimal) {
  // subsets of atom_choices in increasing popcount order
  std::vector<uint32_t> subsets;
  uint32_t sub = 0;
  for (;;) {
    subsets.push_back(sub);
    if (sub == atom_choices) break;
    sub = (sub - atom_choices) & atom_choices;
  }
  std::sort(subsets.begin(), subsets.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  for (uint32_t s : subsets) {
    // all polarity assignments over s
    uint32_t vals = 0;
    for (;;) {
      Term t{s, vals};
      bool subsumed = false;
      for (const auto& m : minimal)
        if (m.subterm_of(t)) {
          subsumed = true;
          break;
        }
      if (!subsumed && term_implies(t, tab, n)) minimal.push_back(t);
      if (vals == s) break;
      vals = (vals - s) & s;
    }
  }
}

}  // namespace

std::vector<Term> prime_implicants(const Formula& f, const Universe& u) {
  int n = u.num_atoms();
  if (n > 16)
    throw ResourceError("prime implicant enumeration capped at 16 atoms");
  TruthTable tab = TruthTable::of(f, n);
  if (tab.none()) return {};
  std::vector<Term> minimal;
  enumerate_terms_over(n >= 32 ? ~0u : (1u << n) - 1, n, tab, minimal);
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

uint32_t essential_atoms(const Formula& f, const Universe& u) {
  int n = u.num_atoms();
  TruthTable tab = TruthTable::of(f, n);
  uint32_t out = 0;
  for (int i = 0; i < n; ++i) {
    // p is inessential iff the two cofactors agree
    bool differs = false;
    uint64_t rows = 1ull << n;
    for (uint32_t v = 0; v < rows; ++v) {
      if ((v >> i) & 1) continue;
      if (tab.test(v) != tab.test(v | (1u << i))) {
        differs = true;
        break;
      }
    }
    if (differs) out |= 1u << i;
  }
  return out;
}

Formula least_equivalent(const Formula& f, const Universe& u) {
  if (cpl_taut(f, u)) return Formula::truth();
  if (!cpl_sat(f, u)) return Formula::falsity();
  std::vector<Term> pis = prime_implicants(f, u);
  Formula out;
  bool first = true;
  for (const auto& t : pis) {
    Formula tf = t.to_formula();
    out = first ? tf : Formula::mk_or(out, tf);
    first = false;
  }
  return out;
}

Formula minimize_with_dont_cares(const Formula& on, const Formula& dc,
                                 const Universe& u) {
  int n = u.num_atoms();
  TruthTable on_tab = TruthTable::of(on, n);
  if (on_tab.none()) return Formula::falsity();
  TruthTable span = on_tab | TruthTable::of(dc, n);
  if (span.all() && on_tab.all()) return Formula::truth();
  std::vector<Term> pis;
  {
    // prime implicants of the widest admissible function
    if (span.all()) return Formula::truth();
    std::vector<Term> minimal;
    enumerate_terms_over(n >= 32 ? ~0u : (1u << n) - 1, n, span, minimal);
    pis = std::move(minimal);
  }
  std::sort(pis.begin(), pis.end());
  std::vector<uint32_t> minterms = on_tab.valuations();
  size_t k = pis.size();
  if (k > 20) throw ResourceError("cover search capped at 20 prime implicants");
  uint32_t best_mask = 0;
  int best_terms = -1, best_lits = -1;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    bool covers = true;
    for (uint32_t v : minterms) {
      bool hit = false;
      for (size_t i = 0; i < k && !hit; ++i)
        if ((mask & (1u << i)) && pis[i].holds_in(v)) hit = true;
      if (!hit) {
        covers = false;
        break;
      }
    }
    if (!covers) continue;
    int terms = __builtin_popcount(mask);
    int lits = 0;
    for (size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) lits += pis[i].size();
    if (best_terms < 0 || terms < best_terms ||
        (terms == best_terms && lits < best_lits)) {
      best_terms = terms;
      best_lits = lits;
      best_mask = mask;
    }
  }
  Formula out;
  bool first = true;
  for (size_t i = 0; i < k; ++i) {
    if (!(best_mask & (1u << i))) continue;
    Formula tf = pis[i].to_formula();
    out = first ? tf : Formula::mk_or(out, tf);
    first = false;
  }
  return first ? Formula::falsity() : out;
}

bool subval_satisfies(const Term& v, const std::vector<uint32_t>& W,
                      const Formula& f) {
  for (uint32_t w : W)
    if (v.holds_in(w) && !eval(f, w)) return false;
  return true;
}

bool subval_forces_literal(const Term& v, const std::vector<uint32_t>& W,
                           int atom, bool positive) {
  for (uint32_t w : W) {
    if (!v.holds_in(w)) continue;
    if ((((w >> atom) & 1) != 0) != positive) return false;
  }
  return true;
}

std::vector<Term> prime_subvaluations(const Formula& f,
                                      const std::vector<uint32_t>& W,
                                      const Universe& u) {
  uint32_t ess = essential_atoms(f, u);
  // submaps over essential atoms, by increasing size, keep the minimal ones
  std::vector<uint32_t> subsets;
  uint32_t sub = 0;
  for (;;) {
    subsets.push_back(sub);
    if (sub == ess) break;
    sub = (sub - ess) & ess;
  }
  std::sort(subsets.begin(), subsets.end(), [](uint32_t a, uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  std::vector<Term> minimal;
  for (uint32_t s : subsets) {
    uint32_t vals = 0;
    for (;;) {
      Term t{s, vals};
      bool subsumed = false;
      for (const auto& m : minimal)
        if (m.subterm_of(t)) {
          subsumed = true;
          break;
        }
      if (!subsumed && subval_satisfies(t, W, f)) minimal.push_back(t);
      if (vals == s) break;
      vals = (vals - s) & s;
    }
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

}  // namespace atc
