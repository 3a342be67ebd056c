#include "atc/postulates.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "atc/boolean.hpp"
#include "atc/contract_sem.hpp"
#include "atc/kripke.hpp"

namespace atc {

const char* postulate_name(Postulate p) {
  switch (p) {
    case Postulate::Monotonicity: return "monotonicity";
    case Postulate::Preservation: return "preservation";
    case Postulate::Success: return "success";
    case Postulate::Equivalences: return "equivalences";
    case Postulate::Recovery: return "recovery";
    case Postulate::Disjunctive: return "disjunctive";
    case Postulate::ModularityPreservation: return "modularity-preservation";
  }
  return "?";
}

bool postulate_from_name(const std::string& name, Postulate& out) {
  for (Postulate p :
       {Postulate::Monotonicity, Postulate::Preservation, Postulate::Success,
        Postulate::Equivalences, Postulate::Recovery, Postulate::Disjunctive,
        Postulate::ModularityPreservation}) {
    if (name == postulate_name(p)) {
      out = p;
      return true;
    }
  }
  return false;
}

namespace {

// Does S alone already entail the law? Guards the success theorem.
bool statics_entail(const Theory& th, const Law& law) {
  Theory s_only;
  s_only.universe = th.universe;
  s_only.statics = th.statics;
  return entails(s_only, law);
}

// Valid in every PDL-model: tautological statics, effect laws with an
// impossible antecedent or tautological consequent, executabilities with an
// impossible antecedent.
bool law_is_valid(const Law& law, const Universe& u) {
  switch (law.kind) {
    case Law::Kind::Static:
      return cpl_taut(law.pre, u);
    case Law::Kind::Effect:
      return !cpl_sat(law.pre, u) || cpl_taut(law.post, u);
    case Law::Kind::Exec:
      return !cpl_sat(law.pre, u);
  }
  return false;
}

std::string describe(const Theory& th, const char* what) {
  std::ostringstream os;
  os << what << ": " << render(th, false);
  std::string s = os.str();
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

PostulateReport check_postulate(const Theory& th, const Law& law,
                                Postulate which, const ContractOptions& opts) {
  PostulateReport report;
  report.id = which;
  TheoryFamily family = contract(th, law, opts);
  switch (which) {
    case Postulate::Monotonicity: {
      for (const auto& t2 : family.theories)
        for (const auto& l : t2.all_laws())
          if (!entails(th, l, opts.entail)) {
            report.holds = false;
            report.witness = "law not entailed by the original theory: " +
                             render(l, th.universe) + "; " +
                             describe(t2, "candidate");
            return report;
          }
      return report;
    }
    case Postulate::Preservation: {
      if (entails(th, law, opts.entail)) {
        report.applicable = false;
        return report;
      }
      for (const auto& t2 : family.theories)
        if (!theory_equiv(th, t2, opts.entail)) {
          report.holds = false;
          report.witness = describe(t2, "inequivalent candidate");
          return report;
        }
      return report;
    }
    case Postulate::Success: {
      // The plain postulate: consistent theory, non-valid law. The §7
      // theorem only promises it when S alone does not entail the law; the
      // fuzz harness restricts itself accordingly.
      bool consistent = cpl_sat(th.statics_conj(), th.universe) &&
                        entails(th, Law::static_law(Formula::falsity()),
                                opts.entail) == false;
      if (!consistent || law_is_valid(law, th.universe)) {
        report.applicable = false;
        return report;
      }
      for (const auto& t2 : family.theories)
        if (entails(t2, law, opts.entail)) {
          report.holds = false;
          report.witness = describe(t2, "candidate still entails the law");
          return report;
        }
      return report;
    }
    case Postulate::Recovery: {
      for (const auto& t2 : family.theories) {
        Theory with_law = t2;
        with_law.add_law(law);
        for (const auto& l : th.all_laws())
          if (!entails(with_law, l, opts.entail)) {
            report.holds = false;
            report.witness = "lost law: " + render(l, th.universe) + "; " +
                             describe(t2, "candidate");
            return report;
          }
      }
      return report;
    }
    case Postulate::ModularityPreservation: {
      if (!is_modular(th).modular) {
        report.applicable = false;
        return report;
      }
      for (const auto& t2 : family.theories)
        if (!is_modular(t2).modular) {
          report.holds = false;
          report.witness = describe(t2, "non-modular candidate");
          return report;
        }
      return report;
    }
    default:
      throw ArgumentError("this postulate needs two theories");
  }
}

namespace {

// Union of the models of a canonical model set with all its minimal
// single-model contractions: the semantic counterpart of the disjunction of
// the contracted theories.
ModelSet semantic_outcome_models(const ModelSet& mset, const Law& law,
                                 Metric metric) {
  ModelSet out;
  for (const auto& m : mset.models) out.insert(m);
  ContractionOutcome c = contract_model_set(mset, law, metric);
  for (const auto& ms : c.model_sets)
    for (const auto& m : ms.models) out.insert(m);
  return out;
}

bool law_equiv(const Law& a, const Law& b, const Universe& u) {
  if (a.kind != b.kind) return false;
  if (a.kind != Law::Kind::Static && a.action != b.action) return false;
  if (!cpl_equiv(a.pre, b.pre, u)) return false;
  if (a.kind == Law::Kind::Effect && !cpl_equiv(a.post, b.post, u))
    return false;
  return true;
}

}  // namespace

PostulateReport check_postulate_pair(const Theory& th1, const Theory& th2,
                                     const Law& law1, const Law& law2,
                                     Postulate which,
                                     const ContractOptions& opts) {
  PostulateReport report;
  report.id = which;
  switch (which) {
    case Postulate::Equivalences: {
      if (!theory_equiv(th1, th2, opts.entail) ||
          !law_equiv(law1, law2, th1.universe)) {
        report.applicable = false;
        return report;
      }
      TheoryFamily f1 = contract(th1, law2, opts);
      TheoryFamily f2 = contract(th2, law1, opts);
      // every candidate on one side has an equivalent on the other
      for (const auto& a : f1.theories) {
        bool found = false;
        for (const auto& b : f2.theories)
          if (theory_equiv(a, b, opts.entail)) {
            found = true;
            break;
          }
        if (!found) {
          report.holds = false;
          report.witness = describe(a, "unmatched candidate");
          return report;
        }
      }
      for (const auto& b : f2.theories) {
        bool found = false;
        for (const auto& a : f1.theories)
          if (theory_equiv(a, b, opts.entail)) {
            found = true;
            break;
          }
        if (!found) {
          report.holds = false;
          report.witness = describe(b, "unmatched candidate");
          return report;
        }
      }
      return report;
    }
    case Postulate::Disjunctive: {
      if (!(th1.universe == th2.universe))
        throw ArgumentError("theories must share a universe");
      ModelSet m1, m2, joint;
      for (const auto& m : canonical_models(th1)) m1.insert(m);
      for (const auto& m : canonical_models(th2)) m2.insert(m);
      for (const auto& m : m1.models) joint.insert(m);
      for (const auto& m : m2.models) joint.insert(m);
      ModelSet lhs = semantic_outcome_models(joint, law1, Metric::Inclusion);
      ModelSet rhs = semantic_outcome_models(m1, law1, Metric::Inclusion);
      for (const auto& m :
           semantic_outcome_models(m2, law1, Metric::Inclusion).models)
        rhs.insert(m);
      if (!(lhs == rhs)) {
        report.holds = false;
        report.witness = "semantic outcomes differ between the disjunction "
                         "and the disjunct-wise contraction";
      }
      return report;
    }
    default:
      throw ArgumentError("this postulate takes a single theory");
  }
}

// ------------------------------------------------------------------- fuzz

namespace {

class Gen {
 public:
  explicit Gen(uint64_t seed) : rng_(seed) {}

  int pick(int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng_); }
  bool coin(double p = 0.5) {
    return std::uniform_real_distribution<double>(0, 1)(rng_) < p;
  }

  Formula formula(int num_atoms, int depth) {
    if (depth == 0 || coin(0.35)) {
      int r = pick(num_atoms + 1);
      if (r == num_atoms) return coin() ? Formula::truth() : Formula::falsity();
      return Formula::lit(r, coin());
    }
    switch (pick(4)) {
      case 0:
        return Formula::mk_not(formula(num_atoms, depth - 1));
      case 1:
        return Formula::mk_and(formula(num_atoms, depth - 1),
                               formula(num_atoms, depth - 1));
      case 2:
        return Formula::mk_or(formula(num_atoms, depth - 1),
                              formula(num_atoms, depth - 1));
      default:
        return Formula::imp(formula(num_atoms, depth - 1),
                            formula(num_atoms, depth - 1));
    }
  }

  std::mt19937_64 rng_;
};

Theory try_random_theory(Gen& g, int max_atoms, int max_actions) {
  Theory th;
  int num_atoms = 2 + g.pick(std::max(1, max_atoms - 1));
  num_atoms = std::min(num_atoms, max_atoms);
  int num_actions = 1 + g.pick(std::max(1, max_actions));
  num_actions = std::min(num_actions, max_actions);
  const char* atom_names[] = {"p", "q", "r", "s"};
  const char* action_names[] = {"a", "b"};
  for (int i = 0; i < num_atoms; ++i) th.universe.add_atom(atom_names[i]);
  for (int i = 0; i < num_actions; ++i)
    th.universe.add_action(action_names[i]);
  int num_statics = g.pick(2);
  for (int i = 0; i < num_statics; ++i) {
    Formula f = g.formula(num_atoms, 2);
    if (cpl_taut(f, th.universe)) continue;
    th.add_law(Law::static_law(f));
  }
  int num_effects = 1 + g.pick(3);
  for (int i = 0; i < num_effects; ++i) {
    Formula pre = g.formula(num_atoms, 1);
    Formula post = g.coin(0.15) ? Formula::falsity() : g.formula(num_atoms, 1);
    th.add_law(Law::effect(pre, g.pick(num_actions), post));
  }
  int num_execs = g.pick(3);
  for (int i = 0; i < num_execs; ++i)
    th.add_law(Law::exec(g.formula(num_atoms, 1), g.pick(num_actions)));
  return th;
}

}  // namespace

Theory random_theory(uint64_t seed, int max_atoms, int max_actions,
                     bool modular_only) {
  Gen g(seed);
  for (int attempt = 0; attempt < 500; ++attempt) {
    Theory th = try_random_theory(g, max_atoms, max_actions);
    if (!cpl_sat(th.statics_conj(), th.universe)) continue;
    if (modular_only && !is_modular(th).modular) continue;
    return th;
  }
  throw Error("theory generation failed to find a candidate");
}

FuzzSummary fuzz_postulates(const FuzzConfig& config) {
  FuzzSummary summary;
  ContractOptions opts;
  opts.allow_non_modular = !config.modular_only;
  for (int i = 0; i < config.count; ++i) {
    Theory th = random_theory(config.seed + static_cast<uint64_t>(i) * 7919,
                              config.max_atoms, config.max_actions,
                              config.modular_only);
    ++summary.theories;
    Gen g(config.seed ^ (0x9e3779b97f4a7c15ull + i));
    // Prefer laws of the theory itself so contraction has work to do;
    // tautologies are not contractible and are rerolled.
    std::vector<Law> laws = th.all_laws();
    Law law;
    for (int attempt = 0;; ++attempt) {
      if (!laws.empty() && g.coin(0.7)) {
        law = laws[g.pick(static_cast<int>(laws.size()))];
      } else {
        int kind = g.pick(3);
        Formula pre = g.formula(th.universe.num_atoms(), 1);
        if (kind == 0)
          law = Law::static_law(pre);
        else if (kind == 1)
          law = Law::effect(pre, g.pick(th.universe.num_actions()),
                            g.formula(th.universe.num_atoms(), 1));
        else
          law = Law::exec(pre, g.pick(th.universe.num_actions()));
      }
      bool taut_static =
          law.kind == Law::Kind::Static && cpl_taut(law.pre, th.universe);
      if (!taut_static) break;
      if (attempt > 50) {
        law = Law::static_law(Formula::atom(0));
        break;
      }
    }
    for (Postulate p : config.postulates) {
      PostulateReport r;
      if (p == Postulate::Success && statics_entail(th, law)) {
        // Outside the §7 theorem's guard; skip rather than demand success.
        r.id = p;
        r.applicable = false;
      } else {
        r = check_postulate(th, law, p, opts);
      }
      ++summary.cases;
      FuzzCase c;
      c.theory_id = i;
      c.theory_text = render(th, false);
      std::replace(c.theory_text.begin(), c.theory_text.end(), '\n', ' ');
      c.law_text = render(law, th.universe);
      c.postulate = p;
      c.holds = r.holds;
      c.applicable = r.applicable;
      c.witness = r.witness;
      if (!r.holds) ++summary.failures;
      summary.reports.push_back(std::move(c));
    }
  }
  return summary;
}

}  // namespace atc
