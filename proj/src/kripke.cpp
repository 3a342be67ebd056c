#include "atc/kripke.hpp"

#include <algorithm>
#include <sstream>

namespace atc {

KripkeModel KripkeModel::empty(const Universe& u) {
  KripkeModel m;
  m.universe = u;
  m.rel.resize(u.num_actions());
  return m;
}

bool KripkeModel::has_world(uint32_t w) const {
  return std::binary_search(worlds.begin(), worlds.end(), w);
}

void KripkeModel::add_world(uint32_t w) {
  auto it = std::lower_bound(worlds.begin(), worlds.end(), w);
  if (it == worlds.end() || *it != w) worlds.insert(it, w);
}

void KripkeModel::add_edge(int action, uint32_t from, uint32_t to) {
  if (!has_world(from) || !has_world(to))
    throw ArgumentError("edge endpoint is not a world");
  auto& edges = rel[action];
  Edge e{from, to};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it == edges.end() || *it != e) edges.insert(it, e);
}

void KripkeModel::remove_edge(int action, uint32_t from, uint32_t to) {
  auto& edges = rel[action];
  Edge e{from, to};
  auto it = std::lower_bound(edges.begin(), edges.end(), e);
  if (it != edges.end() && *it == e) edges.erase(it);
}

bool KripkeModel::has_edge(int action, uint32_t from, uint32_t to) const {
  const auto& edges = rel[action];
  return std::binary_search(edges.begin(), edges.end(), Edge{from, to});
}

std::vector<uint32_t> KripkeModel::successors(int action, uint32_t from) const {
  std::vector<uint32_t> out;
  for (const auto& e : rel[action])
    if (e.first == from) out.push_back(e.second);
  return out;
}

void KripkeModel::remove_edges_from(int action, uint32_t from) {
  auto& edges = rel[action];
  edges.erase(std::remove_if(edges.begin(), edges.end(),
                             [&](const Edge& e) { return e.first == from; }),
              edges.end());
}

size_t KripkeModel::edge_count() const {
  size_t n = 0;
  for (const auto& edges : rel) n += edges.size();
  return n;
}

bool ModelSet::insert(const KripkeModel& m) {
  if (contains(m)) return false;
  models.push_back(m);
  return true;
}

bool ModelSet::contains(const KripkeModel& m) const {
  for (const auto& x : models)
    if (x == m) return true;
  return false;
}

bool ModelSet::operator==(const ModelSet& o) const {
  if (models.size() != o.models.size()) return false;
  for (const auto& m : models)
    if (!o.contains(m)) return false;
  return true;
}

// ------------------------------------------------------------------- truth

bool satisfies(const KripkeModel& m, uint32_t w, const Formula& f) {
  using K = Formula::Kind;
  if (!m.has_world(w)) throw ArgumentError("not a world of the model");
  switch (f.kind()) {
    case K::True: return true;
    case K::False: return false;
    case K::Atom: return (w >> f.index()) & 1;
    case K::Not: return !satisfies(m, w, f.left());
    case K::And: return satisfies(m, w, f.left()) && satisfies(m, w, f.right());
    case K::Or: return satisfies(m, w, f.left()) || satisfies(m, w, f.right());
    case K::Imp:
      return !satisfies(m, w, f.left()) || satisfies(m, w, f.right());
    case K::Iff:
      return satisfies(m, w, f.left()) == satisfies(m, w, f.right());
    case K::Box: {
      for (const auto& e : m.rel[f.index()])
        if (e.first == w && !satisfies(m, e.second, f.left())) return false;
      return true;
    }
    case K::Dia: {
      for (const auto& e : m.rel[f.index()])
        if (e.first == w && satisfies(m, e.second, f.left())) return true;
      return false;
    }
  }
  return false;
}

bool globally_satisfies(const KripkeModel& m, const Formula& f) {
  for (uint32_t w : m.worlds)
    if (!satisfies(m, w, f)) return false;
  return true;
}

bool satisfies_law(const KripkeModel& m, const Law& law) {
  // Law shapes admit a direct check without formula allocation.
  for (uint32_t w : m.worlds) {
    if (!eval(law.pre, w)) continue;
    switch (law.kind) {
      case Law::Kind::Static:
        break;  // pre is the whole law
      case Law::Kind::Effect:
        for (const auto& e : m.rel[law.action])
          if (e.first == w && !eval(law.post, e.second)) return false;
        break;
      case Law::Kind::Exec: {
        bool found = false;
        for (const auto& e : m.rel[law.action])
          if (e.first == w) {
            found = true;
            break;
          }
        if (!found) return false;
        break;
      }
    }
  }
  if (law.kind == Law::Kind::Static) {
    for (uint32_t w : m.worlds)
      if (!eval(law.pre, w)) return false;
  }
  return true;
}

bool globally_satisfies(const KripkeModel& m, const std::vector<Law>& laws) {
  for (const auto& l : laws)
    if (!satisfies_law(m, l)) return false;
  return true;
}

bool globally_satisfies(const KripkeModel& m, const Theory& th) {
  return globally_satisfies(m, th.all_laws());
}

// --------------------------------------------------------------- big model

KripkeModel big_model(const Theory& th) {
  KripkeModel m = KripkeModel::empty(th.universe);
  m.worlds = valuations_of(th.statics_conj(), th.universe);
  for (int a = 0; a < th.universe.num_actions(); ++a) {
    auto laws = th.effects_for(a);
    for (uint32_t w : m.worlds) {
      for (uint32_t v : m.worlds) {
        bool ok = true;
        for (const auto& l : laws) {
          if (eval(l.pre, w) && !eval(l.post, v)) {
            ok = false;
            break;
          }
        }
        if (ok) m.rel[a].push_back({w, v});
      }
    }
    std::sort(m.rel[a].begin(), m.rel[a].end());
  }
  return m;
}

// --------------------------------------------------------------- closeness

namespace {

std::vector<uint32_t> symdiff(const std::vector<uint32_t>& a,
                              const std::vector<uint32_t>& b) {
  std::vector<uint32_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

std::vector<Edge> symdiff_rel(const KripkeModel& a, const KripkeModel& b,
                              int action) {
  std::vector<Edge> out;
  std::set_symmetric_difference(a.rel[action].begin(), a.rel[action].end(),
                                b.rel[action].begin(), b.rel[action].end(),
                                std::back_inserter(out));
  return out;
}

bool subset(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool subset(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace

bool closeness_leq(const KripkeModel& ref, const KripkeModel& m1,
                   const KripkeModel& m2, Metric metric) {
  auto wd1 = symdiff(ref.worlds, m1.worlds);
  auto wd2 = symdiff(ref.worlds, m2.worlds);
  size_t actions = ref.rel.size();
  if (metric == Metric::Cardinality) {
    if (wd1.size() != wd2.size()) return wd1.size() < wd2.size();
    size_t r1 = 0, r2 = 0;
    for (size_t a = 0; a < actions; ++a) {
      r1 += symdiff_rel(ref, m1, static_cast<int>(a)).size();
      r2 += symdiff_rel(ref, m2, static_cast<int>(a)).size();
    }
    return r1 <= r2;
  }
  // set inclusion, strict on the world clause
  if (wd1 != wd2) return subset(wd1, wd2);
  for (size_t a = 0; a < actions; ++a) {
    if (!subset(symdiff_rel(ref, m1, static_cast<int>(a)),
                symdiff_rel(ref, m2, static_cast<int>(a))))
      return false;
  }
  return true;
}

std::vector<KripkeModel> minimal_under(const KripkeModel& ref,
                                       const std::vector<KripkeModel>& cands,
                                       Metric metric) {
  std::vector<KripkeModel> out;
  for (const auto& c : cands) {
    bool dominated = false;
    for (const auto& d : cands) {
      if (&d == &c) continue;
      if (closeness_leq(ref, d, c, metric) &&
          !closeness_leq(ref, c, d, metric)) {
        dominated = true;
        break;
      }
    }
    if (!dominated && std::find(out.begin(), out.end(), c) == out.end())
      out.push_back(c);
  }
  return out;
}

// ----------------------------------------------------------------- exports

std::string world_label(uint32_t w, const Universe& u) {
  std::string out;
  for (int i = 0; i < u.num_atoms(); ++i) {
    if (i) out += ',';
    if (!((w >> i) & 1)) out += '~';
    out += u.atoms[i];
  }
  return out;
}

namespace {
int world_id(const KripkeModel& m, uint32_t w) {
  return static_cast<int>(
      std::lower_bound(m.worlds.begin(), m.worlds.end(), w) -
      m.worlds.begin());
}
}  // namespace

std::string to_text(const KripkeModel& m) {
  std::ostringstream os;
  for (size_t i = 0; i < m.worlds.size(); ++i)
    os << 'w' << i << ": " << world_label(m.worlds[i], m.universe) << "\n";
  for (size_t a = 0; a < m.rel.size(); ++a)
    for (const auto& e : m.rel[a])
      os << m.universe.actions[a] << ": w" << world_id(m, e.first) << " -> w"
         << world_id(m, e.second) << "\n";
  return os.str();
}

std::string to_text(const ModelSet& ms) {
  std::ostringstream os;
  for (size_t i = 0; i < ms.models.size(); ++i) {
    os << "model " << i << ":\n" << to_text(ms.models[i]);
    if (i + 1 < ms.models.size()) os << "\n";
  }
  return os.str();
}

KripkeModel parse_model_text(const std::string& text) {
  // Universe is inferred: atom order from the first world line, actions in
  // order of first appearance on edge lines.
  std::istringstream is(text);
  std::string line;
  Universe u;
  std::vector<std::pair<std::string, uint32_t>> worlds;  // id -> valuation
  struct RawEdge {
    std::string action, from, to;
  };
  std::vector<RawEdge> edges;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto trim = [](std::string s) {
      size_t b = s.find_first_not_of(" \t\r");
      size_t e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected ':'", lineno, 1);
    std::string head = trim(line.substr(0, colon));
    std::string rest = trim(line.substr(colon + 1));
    size_t arrow = rest.find("->");
    if (arrow != std::string::npos) {
      edges.push_back({head, trim(rest.substr(0, arrow)),
                       trim(rest.substr(arrow + 2))});
      continue;
    }
    uint32_t val = 0;
    std::istringstream ls(rest);
    std::string lit;
    while (std::getline(ls, lit, ',')) {
      lit = trim(lit);
      if (lit.empty()) throw ParseError("empty literal", lineno, 1);
      bool pos = lit[0] != '~';
      std::string name = pos ? lit : trim(lit.substr(1));
      int i = u.add_atom(name);
      if (pos) val |= 1u << i;
    }
    worlds.push_back({head, val});
  }
  for (const auto& e : edges) u.add_action(e.action);
  KripkeModel m = KripkeModel::empty(u);
  for (const auto& [id, val] : worlds) m.add_world(val);
  auto lookup = [&](const std::string& id) -> uint32_t {
    for (const auto& [wid, val] : worlds)
      if (wid == id) return val;
    throw ParseError("unknown world id '" + id + "'", 0, 0);
  };
  for (const auto& e : edges)
    m.add_edge(u.action_index(e.action), lookup(e.from), lookup(e.to));
  return m;
}

std::string export_dot(const KripkeModel& m) {
  std::ostringstream os;
  os << "digraph model {\n";
  os << "  rankdir=LR;\n  node [shape=box];\n";
  for (size_t i = 0; i < m.worlds.size(); ++i)
    os << "  w" << i << " [label=\"" << world_label(m.worlds[i], m.universe)
       << "\"];\n";
  for (size_t a = 0; a < m.rel.size(); ++a)
    for (const auto& e : m.rel[a])
      os << "  w" << world_id(m, e.first) << " -> w" << world_id(m, e.second)
         << " [label=\"" << m.universe.actions[a] << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string export_dot(const ModelSet& ms) {
  std::ostringstream os;
  os << "digraph models {\n";
  for (size_t i = 0; i < ms.models.size(); ++i) {
    const auto& m = ms.models[i];
    os << "  subgraph cluster_" << i << " {\n";
    os << "    label=\"model " << i << "\";\n    node [shape=box];\n";
    for (size_t j = 0; j < m.worlds.size(); ++j)
      os << "    m" << i << "w" << j << " [label=\""
         << world_label(m.worlds[j], m.universe) << "\"];\n";
    for (size_t a = 0; a < m.rel.size(); ++a)
      for (const auto& e : m.rel[a])
        os << "    m" << i << "w" << world_id(m, e.first) << " -> m" << i
           << "w" << world_id(m, e.second) << " [label=\""
           << m.universe.actions[a] << "\"];\n";
    os << "  }\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace atc
