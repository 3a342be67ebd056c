#include "atc/entail.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <sstream>

#include "atc/boolean.hpp"

namespace atc {

int modal_depth(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True:
    case K::False:
    case K::Atom:
      return 0;
    case K::Not:
      return modal_depth(f.left());
    case K::Box:
    case K::Dia:
      return 1 + modal_depth(f.left());
    default:
      return std::max(modal_depth(f.left()), modal_depth(f.right()));
  }
}

// -------------------------------------------------------------- modularity

ModularityReport is_modular(const Theory& th) {
  ModularityReport report;
  KripkeModel big = big_model(th);
  for (const auto& x : th.execs) {
    for (uint32_t w : big.worlds) {
      if (!eval(x.pre, w)) continue;
      bool has_succ = false;
      for (const auto& e : big.rel[x.action])
        if (e.first == w) {
          has_succ = true;
          break;
        }
      if (!has_succ) report.failing_worlds.push_back({w, x});
    }
  }
  report.modular = report.failing_worlds.empty();
  if (!report.modular) {
    Formula conj;
    bool first = true;
    for (const auto& [w, law] : report.failing_worlds) {
      Formula wit = Formula::mk_not(
          Term::of_valuation(w, th.universe.num_atoms()).to_formula());
      bool dup = false;
      for (const auto& f : report.implicit_statics)
        if (f == wit) dup = true;
      if (!dup) report.implicit_statics.push_back(wit);
      conj = first ? wit : Formula::mk_and(conj, wit);
      first = false;
    }
    // Simplify relative to S: valuations outside val(S) are free.
    Formula s_conj = th.statics_conj();
    report.summary =
        minimize_with_dont_cares(Formula::mk_and(conj, s_conj),
                                 Formula::mk_not(s_conj), th.universe);
  }
  return report;
}

// ------------------------------------------------------------------ oracle

namespace {

// Per-world constraints an action's laws impose on any model with world set W.
struct ActionProfile {
  // allowed[i]: successor worlds legal from W[i] under the effect laws
  std::vector<std::vector<uint32_t>> allowed;
  std::vector<bool> exec_required;
  bool feasible = true;  // every exec-required world has a legal successor
};

ActionProfile profile_action(const Theory& th, int action,
                             const std::vector<uint32_t>& W) {
  ActionProfile p;
  auto effs = th.effects_for(action);
  auto exes = th.execs_for(action);
  p.allowed.resize(W.size());
  p.exec_required.resize(W.size(), false);
  for (size_t i = 0; i < W.size(); ++i) {
    for (uint32_t v : W) {
      bool ok = true;
      for (const auto& l : effs)
        if (eval(l.pre, W[i]) && !eval(l.post, v)) {
          ok = false;
          break;
        }
      if (ok) p.allowed[i].push_back(v);
    }
    for (const auto& x : exes)
      if (eval(x.pre, W[i])) {
        p.exec_required[i] = true;
        break;
      }
    if (p.exec_required[i] && p.allowed[i].empty()) p.feasible = false;
  }
  return p;
}

bool statics_hold(const Theory& th, const std::vector<uint32_t>& W) {
  for (uint32_t w : W)
    for (const auto& s : th.statics)
      if (!eval(s, w)) return false;
  return true;
}

// Truth of a modal-depth-one formula at w when action rows are prescribed.
// rows[a] is the successor list of w for action a.
bool eval_at(const Formula& f, uint32_t w,
             const std::vector<std::vector<uint32_t>>& rows) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return (w >> f.index()) & 1;
    case K::Not: return !eval_at(f.left(), w, rows);
    case K::And: return eval_at(f.left(), w, rows) && eval_at(f.right(), w, rows);
    case K::Or: return eval_at(f.left(), w, rows) || eval_at(f.right(), w, rows);
    case K::Imp: return !eval_at(f.left(), w, rows) || eval_at(f.right(), w, rows);
    case K::Iff: return eval_at(f.left(), w, rows) == eval_at(f.right(), w, rows);
    case K::Box:
      for (uint32_t v : rows[f.index()])
        if (!eval(f.left(), v)) return false;
      return true;
    case K::Dia:
      for (uint32_t v : rows[f.index()])
        if (eval(f.left(), v)) return true;
      return false;
  }
  return false;
}

// Can some Θ-model over W falsify f at some world? Per-world analysis,
// sound because every law constrains exactly one world's successor row.
bool countermodel_over(const Theory& th, const Formula& f,
                       const std::vector<uint32_t>& W) {
  if (!statics_hold(th, W)) return false;
  int num_actions = th.universe.num_actions();
  std::vector<ActionProfile> profiles;
  profiles.reserve(num_actions);
  for (int a = 0; a < num_actions; ++a) {
    profiles.push_back(profile_action(th, a, W));
    if (!profiles.back().feasible) return false;
  }
  if (W.empty()) return false;  // the empty model satisfies everything
  // Try each witness world; enumerate its successor rows for the actions f
  // mentions, everything else stays maximal.
  uint32_t f_actions = 0;
  {
    std::function<void(const Formula&)> walk = [&](const Formula& g) {
      using K = Formula::Kind;
      switch (g.kind()) {
        case K::True:
        case K::False:
        case K::Atom:
          return;
        case K::Box:
        case K::Dia:
          f_actions |= 1u << g.index();
          walk(g.left());
          return;
        case K::Not:
          walk(g.left());
          return;
        default:
          walk(g.left());
          walk(g.right());
          return;
      }
    };
    walk(f);
  }
  for (size_t i = 0; i < W.size(); ++i) {
    // rows for actions not in f: any legal row; truth of f ignores them
    std::vector<std::vector<uint32_t>> rows(num_actions);
    std::vector<int> vary;
    for (int a = 0; a < num_actions; ++a) {
      if (f_actions & (1u << a))
        vary.push_back(a);
      else
        rows[a] = profiles[a].allowed[i];
    }
    // enumerate subsets of allowed rows for the varying actions
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
      if (k == vary.size()) return !eval_at(f, W[i], rows);
      int a = vary[k];
      const auto& cand = profiles[a].allowed[i];
      size_t m = cand.size();
      if (m > 20) throw ResourceError("oracle row enumeration too large");
      for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        if (profiles[a].exec_required[i] && mask == 0) continue;
        rows[a].clear();
        for (size_t j = 0; j < m; ++j)
          if (mask & (1u << j)) rows[a].push_back(cand[j]);
        if (rec(k + 1)) return true;
      }
      return false;
    };
    if (rec(0)) return true;
  }
  return false;
}

}  // namespace

bool oracle_entails_full(const Theory& th, const Formula& f) {
  const Universe& u = th.universe;
  if (u.num_atoms() > 2 || u.num_actions() > 1)
    throw ResourceError(
        "full model enumeration requires at most 2 atoms and 1 action");
  int nv = 1 << u.num_atoms();
  std::vector<Law> laws = th.all_laws();
  for (uint32_t wmask = 0; wmask < (1u << nv); ++wmask) {
    KripkeModel m = KripkeModel::empty(u);
    if (m.rel.empty()) m.rel.resize(1);  // tolerate action-free universes
    std::vector<uint32_t> W;
    for (int v = 0; v < nv; ++v)
      if (wmask & (1u << v)) W.push_back(static_cast<uint32_t>(v));
    m.worlds = W;
    size_t pairs = W.size() * W.size();
    for (uint64_t rmask = 0; rmask < (1ull << pairs); ++rmask) {
      m.rel[0].clear();
      size_t k = 0;
      for (uint32_t a : W)
        for (uint32_t b : W) {
          if (rmask & (1ull << k)) m.rel[0].push_back({a, b});
          ++k;
        }
      std::sort(m.rel[0].begin(), m.rel[0].end());
      if (!globally_satisfies(m, laws)) continue;
      if (!globally_satisfies(m, f)) return false;
    }
  }
  return true;
}

bool oracle_entails(const Theory& th, const Formula& f,
                    const OracleCaps& caps) {
  const Universe& u = th.universe;
  if (u.num_atoms() > caps.max_atoms)
    throw ResourceError("oracle capped at " + std::to_string(caps.max_atoms) +
                        " atoms");
  if (u.num_actions() > caps.max_actions)
    throw ResourceError("oracle capped at " + std::to_string(caps.max_actions) +
                        " actions");
  if (u.num_atoms() <= 2 && u.num_actions() <= 1 && modal_depth(f) >= 2)
    return oracle_entails_full(th, f);
  if (modal_depth(f) > 1)
    throw ResourceError(
        "oracle handles modal depth greater than one only at 2 atoms, "
        "1 action");
  int nv = 1 << u.num_atoms();
  for (uint32_t wmask = 0; wmask < (1u << nv); ++wmask) {
    std::vector<uint32_t> W;
    for (int v = 0; v < nv; ++v)
      if (wmask & (1u << v)) W.push_back(static_cast<uint32_t>(v));
    if (countermodel_over(th, f, W)) return false;
  }
  return true;
}

std::vector<KripkeModel> canonical_models(const Theory& th, size_t limit) {
  const Universe& u = th.universe;
  std::vector<uint32_t> W = valuations_of(th.statics_conj(), u);
  int num_actions = u.num_actions();
  std::vector<ActionProfile> profiles;
  for (int a = 0; a < num_actions; ++a) {
    profiles.push_back(profile_action(th, a, W));
    if (!profiles.back().feasible) return {};
  }
  // One odometer cell per (action, world): a subset of the allowed targets,
  // nonempty where an executability law applies.
  struct Cell {
    int action;
    size_t world;
    std::vector<uint32_t> masks;  // admissible subsets of allowed[world]
  };
  std::vector<Cell> cells;
  for (int a = 0; a < num_actions; ++a)
    for (size_t i = 0; i < W.size(); ++i) {
      Cell c{a, i, {}};
      size_t k = profiles[a].allowed[i].size();
      if (k > 20) throw ResourceError("canonical model enumeration too large");
      for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (mask == 0 && profiles[a].exec_required[i]) continue;
        c.masks.push_back(mask);
      }
      cells.push_back(std::move(c));
    }
  std::vector<KripkeModel> out;
  std::vector<size_t> pick(cells.size(), 0);
  for (;;) {
    KripkeModel m = KripkeModel::empty(u);
    m.worlds = W;
    for (size_t ci = 0; ci < cells.size(); ++ci) {
      const Cell& c = cells[ci];
      uint32_t mask = c.masks[pick[ci]];
      const auto& allowed = profiles[c.action].allowed[c.world];
      for (size_t j = 0; j < allowed.size(); ++j)
        if (mask & (1u << j))
          m.rel[c.action].push_back({W[c.world], allowed[j]});
    }
    for (auto& edges : m.rel) std::sort(edges.begin(), edges.end());
    out.push_back(std::move(m));
    if (out.size() > limit)
      throw ResourceError("canonical model enumeration exceeds limit");
    size_t i = 0;
    while (i < cells.size() && ++pick[i] == cells[i].masks.size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == cells.size()) break;
  }
  return out;
}

// ---------------------------------------------------------- law entailment

bool entails(const Theory& th, const Law& law, const EntailOptions& opts) {
  ModularityReport report = is_modular(th);
  if (!report.modular) {
    if (opts.on_non_modular == EntailOptions::NonModular::Error) {
      std::ostringstream os;
      os << "theory is not modular; implicit static laws:";
      for (const auto& f : report.implicit_statics)
        os << " " << render(f, th.universe) << ";";
      throw PreconditionError(os.str());
    }
    return oracle_entails(th, law.as_formula(), opts.caps);
  }
  switch (law.kind) {
    case Law::Kind::Static:
      return cpl_entails(th.statics, law.pre, th.universe);
    case Law::Kind::Effect: {
      // Any model's arrows over val(S) are a subset of the big model's.
      KripkeModel big = big_model(th);
      return satisfies_law(big, law);
    }
    case Law::Kind::Exec: {
      // Covered iff every S∧φ world is matched by some executability law.
      auto exes = th.execs_for(law.action);
      for (uint32_t w : valuations_of(th.statics_conj(), th.universe)) {
        if (!eval(law.pre, w)) continue;
        bool covered = false;
        for (const auto& x : exes)
          if (eval(x.pre, w)) {
            covered = true;
            break;
          }
        if (!covered) return false;
      }
      return true;
    }
  }
  return false;
}

}  // namespace atc
