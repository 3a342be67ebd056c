#include "atc/contract_syn.hpp"

#include <algorithm>
#include <sstream>

#include "atc/boolean.hpp"
#include "atc/kripke.hpp"

namespace atc {

namespace {

void require_modular_or_forced(const Theory& th, const ContractOptions& opts) {
  if (opts.allow_non_modular) return;
  ModularityReport report = is_modular(th);
  if (report.modular) return;
  std::ostringstream os;
  os << "contraction requires a modular theory; implicit static laws:";
  for (const auto& f : report.implicit_statics)
    os << " " << render(f, th.universe) << ";";
  os << " simplified: " << render(report.summary, th.universe);
  throw PreconditionError(os.str());
}

// S-consistent full-valuation contexts π ∧ φ_A, π ranging over IP(S ∧ φ),
// deduplicated across overlapping prime implicants.
std::vector<Term> consistent_contexts(const Theory& th, const Formula& phi) {
  const Universe& u = th.universe;
  int n = u.num_atoms();
  uint32_t full = n >= 32 ? ~0u : (1u << n) - 1;
  Formula s_and_phi = Formula::mk_and(th.statics_conj(), phi);
  TruthTable s_tab = TruthTable::of(th.statics_conj(), n);
  std::vector<Term> out;
  for (const auto& pi : prime_implicants(s_and_phi, u)) {
    uint32_t comp = full & ~pi.atoms;
    uint32_t a = 0;
    for (;;) {
      Term ctx{full, pi.values | a};
      if (s_tab.test(ctx.values)) {  // S does not refute the context
        if (std::find(out.begin(), out.end(), ctx) == out.end())
          out.push_back(ctx);
      }
      if (a == comp) break;
      a = (a - comp) & comp;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void sort_and_dedup(TheoryFamily& family) {
  auto& ts = family.theories;
  for (size_t i = 0; i < ts.size(); ++i)
    for (size_t j = i + 1; j < ts.size();) {
      if (ts[i] == ts[j])
        ts.erase(ts.begin() + j);
      else
        ++j;
    }
  std::sort(ts.begin(), ts.end(), [](const Theory& a, const Theory& b) {
    return render(a, false) < render(b, false);
  });
}

}  // namespace

TheoryFamily contract_exec(const Theory& th, const Law& law,
                           const ContractOptions& opts) {
  if (law.kind != Law::Kind::Exec)
    throw ArgumentError("expected an executability law");
  require_modular_or_forced(th, opts);
  TheoryFamily family;
  if (!entails(th, law, opts.entail)) {
    family.theories.push_back(th);
    return family;
  }
  std::vector<Term> contexts = consistent_contexts(th, law.pre);
  if (contexts.empty()) {
    // The law is entailed vacuously (φ impossible under S); nothing to
    // weaken, the theory stands.
    family.theories.push_back(th);
    return family;
  }
  for (const auto& ctx : contexts) {
    Theory out = th;
    Formula ctx_f = ctx.to_formula();
    out.execs.clear();
    for (const auto& x : th.execs) {
      if (x.action != law.action) {
        out.add_law(x);
        continue;
      }
      Formula weaker = Formula::mk_and(x.pre, Formula::mk_not(ctx_f));
      out.add_law(Law::exec(weaker, x.action));
    }
    family.theories.push_back(std::move(out));
  }
  sort_and_dedup(family);
  return family;
}

EffectSupports minimum_effect_supports(const Theory& th, const Law& law) {
  EffectSupports out;
  if (law.kind != Law::Kind::Effect)
    throw ArgumentError("expected an effect law");
  std::vector<Law> pool = th.effects_for(law.action);
  size_t k = pool.size();
  if (k > 20) throw ResourceError("effect support search capped at 20 laws");
  std::vector<uint32_t> hits;
  for (uint32_t mask = 0; mask < (1u << k); ++mask) {
    Theory sub;
    sub.universe = th.universe;
    sub.statics = th.statics;
    for (size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) sub.effects.push_back(pool[i]);
    // No executability laws: the big model decides entailment exactly.
    if (satisfies_law(big_model(sub), law)) hits.push_back(mask);
  }
  std::vector<uint32_t> minimal;
  for (uint32_t m1 : hits) {
    bool min = true;
    for (uint32_t m2 : hits)
      if (m2 != m1 && (m2 & ~m1) == 0) {
        min = false;
        break;
      }
    if (min) minimal.push_back(m1);
  }
  uint32_t union_mask = 0;
  for (uint32_t m : minimal) {
    union_mask |= m;
    std::vector<Law> support;
    for (size_t i = 0; i < k; ++i)
      if (m & (1u << i)) support.push_back(pool[i]);
    out.supports.push_back(std::move(support));
  }
  for (size_t i = 0; i < k; ++i)
    if (union_mask & (1u << i)) out.union_laws.push_back(pool[i]);
  return out;
}

TheoryFamily contract_effect(const Theory& th, const Law& law,
                             const ContractOptions& opts) {
  if (law.kind != Law::Kind::Effect)
    throw ArgumentError("expected an effect law");
  require_modular_or_forced(th, opts);
  TheoryFamily family;
  if (!entails(th, law, opts.entail)) {
    family.theories.push_back(th);
    return family;
  }
  const Universe& u = th.universe;
  std::vector<Law> e_minus = minimum_effect_supports(th, law).union_laws;
  auto in_e_minus = [&](const Law& l) {
    return std::find(e_minus.begin(), e_minus.end(), l) != e_minus.end();
  };
  std::vector<Term> contexts = consistent_contexts(th, law.pre);
  Formula neg_post = Formula::mk_not(law.post);
  std::vector<Term> neg_pis =
      prime_implicants(Formula::mk_and(th.statics_conj(), neg_post), u);
  if (contexts.empty() || neg_pis.empty()) {
    family.theories.push_back(th);
    return family;
  }
  TruthTable s_tab = TruthTable::of(th.statics_conj(), u.num_atoms());
  for (const auto& ctx : contexts) {
    Formula ctx_f = ctx.to_formula();
    for (const auto& pi2 : neg_pis) {
      Formula pi2_f = pi2.to_formula();
      Theory out = th;
      out.effects.clear();
      for (const auto& e : th.effects) {
        if (!in_e_minus(e)) {
          out.add_law(e);
          continue;
        }
        out.add_law(Law::effect(
            Formula::mk_and(e.pre, Formula::mk_not(ctx_f)), e.action, e.post));
        out.add_law(Law::effect(Formula::mk_and(e.pre, ctx_f), e.action,
                                Formula::mk_or(e.post, pi2_f)));
      }
      // Literal preservation: keep, in the lone changed context, every
      // literal not forced to change (single-literal instances of the
      // L ⊆ Lit loop; larger L add nothing).
      for (int i = 0; i < u.num_atoms(); ++i) {
        bool pos = (ctx.values >> i) & 1;
        Term lit_term{1u << i, pos ? (1u << i) : 0};
        // S must not refute π' ∧ ℓ
        Formula joint = Formula::mk_and(pi2_f, lit_term.to_formula());
        if (!cpl_sat(Formula::mk_and(th.statics_conj(), joint), u)) continue;
        bool in_pi2 = (pi2.atoms & (1u << i)) &&
                      (((pi2.values >> i) & 1) != 0) == pos;
        bool add = in_pi2;
        if (!add) {
          Law fixed = Law::effect(Formula::mk_and(ctx_f, lit_term.to_formula()),
                                  law.action,
                                  Formula::mk_not(lit_term.to_formula()));
          add = !entails(th, fixed, opts.entail);
        }
        if (add) {
          out.add_law(Law::effect(
              Formula::mk_and(ctx_f, lit_term.to_formula()), law.action,
              Formula::mk_or(law.post, lit_term.to_formula())));
        }
      }
      family.theories.push_back(std::move(out));
    }
  }
  sort_and_dedup(family);
  return family;
}

std::vector<std::vector<Formula>> classical_contract(
    const std::vector<Formula>& statics, const Formula& phi,
    const Universe& u) {
  Theory tmp{u, statics, {}, {}};
  Formula s_conj = tmp.statics_conj();
  if (!cpl_sat(s_conj, u))
    throw PreconditionError("static laws are inconsistent");
  if (cpl_taut(phi, u)) throw ArgumentError("tautology not contractible");
  if (!cpl_entails(statics, phi, u)) return {statics};
  std::vector<std::vector<Formula>> out;
  for (uint32_t v : valuations_of(Formula::mk_not(phi), u)) {
    Formula widened = Formula::mk_or(
        s_conj, Term::of_valuation(v, u.num_atoms()).to_formula());
    out.push_back({least_equivalent(widened, u)});
  }
  return out;
}

TheoryFamily contract_static(const Theory& th, const Formula& phi,
                             const ContractOptions& opts) {
  (void)opts;
  if (!phi.is_boolean()) throw ArgumentError("expected a Boolean formula");
  TheoryFamily family;
  if (!cpl_entails(th.statics, phi, th.universe)) {
    family.theories.push_back(th);
    return family;
  }
  for (const auto& s_minus :
       classical_contract(th.statics, phi, th.universe)) {
    Theory out;
    out.universe = th.universe;
    out.statics = s_minus;
    for (const auto& e : th.effects) out.add_law(e);
    for (const auto& x : th.execs)
      out.add_law(Law::exec(Formula::mk_and(x.pre, phi), x.action));
    for (int a = 0; a < th.universe.num_actions(); ++a)
      out.add_law(Law::effect(Formula::mk_not(phi), a, Formula::falsity()));
    family.theories.push_back(std::move(out));
  }
  sort_and_dedup(family);
  return family;
}

TheoryFamily contract(const Theory& th, const Law& law,
                      const ContractOptions& opts) {
  switch (law.kind) {
    case Law::Kind::Static:
      return contract_static(th, law.pre, opts);
    case Law::Kind::Effect:
      return contract_effect(th, law, opts);
    case Law::Kind::Exec:
      return contract_exec(th, law, opts);
  }
  throw ArgumentError("unknown law kind");
}

bool theory_equiv(const Theory& a, const Theory& b,
                  const EntailOptions& opts) {
  if (!(a.universe == b.universe))
    throw ArgumentError("theories must share a universe");
  for (const auto& l : b.all_laws())
    if (!entails(a, l, opts)) return false;
  for (const auto& l : a.all_laws())
    if (!entails(b, l, opts)) return false;
  return true;
}

}  // namespace atc
