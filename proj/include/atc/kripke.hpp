// PDL-models with worlds-as-valuations, truth checking, the big model,
// closeness orderings and exports.
#ifndef ATC_KRIPKE_HPP_
#define ATC_KRIPKE_HPP_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "atc/boolean.hpp"
#include "atc/syntax.hpp"

namespace atc {

using Edge = std::pair<uint32_t, uint32_t>;

// Worlds are distinct valuations; rel[a] holds the a-arrows, sorted.
struct KripkeModel {
  Universe universe;
  std::vector<uint32_t> worlds;           // sorted, unique
  std::vector<std::vector<Edge>> rel;     // indexed by action

  static KripkeModel empty(const Universe& u);

  bool has_world(uint32_t w) const;
  void add_world(uint32_t w);
  void add_edge(int action, uint32_t from, uint32_t to);
  void remove_edge(int action, uint32_t from, uint32_t to);
  bool has_edge(int action, uint32_t from, uint32_t to) const;
  std::vector<uint32_t> successors(int action, uint32_t from) const;
  void remove_edges_from(int action, uint32_t from);
  size_t edge_count() const;

  // Structural identity on worlds and arrows (same universe assumed).
  bool operator==(const KripkeModel& o) const {
    return worlds == o.worlds && rel == o.rel;
  }
  bool operator<(const KripkeModel& o) const {
    return worlds != o.worlds ? worlds < o.worlds : rel < o.rel;
  }
};

// A finite set of models with set semantics.
struct ModelSet {
  std::vector<KripkeModel> models;

  bool insert(const KripkeModel& m);  // false if already present
  bool contains(const KripkeModel& m) const;
  size_t size() const { return models.size(); }
  bool operator==(const ModelSet& o) const;
};

bool satisfies(const KripkeModel& m, uint32_t w, const Formula& f);
bool globally_satisfies(const KripkeModel& m, const Formula& f);
bool globally_satisfies(const KripkeModel& m, const std::vector<Law>& laws);
bool globally_satisfies(const KripkeModel& m, const Theory& th);
bool satisfies_law(const KripkeModel& m, const Law& law);

// W = val(S); maximal arrows compatible with the effect laws.
KripkeModel big_model(const Theory& th);

enum class Metric { Inclusion, Cardinality };

// M1 at least as close to ref as M2 under the chosen metric. The
// set-inclusion metric reads the world clause strictly, then compares
// relations lexicographically.
bool closeness_leq(const KripkeModel& ref, const KripkeModel& m1,
                   const KripkeModel& m2, Metric metric);

std::vector<KripkeModel> minimal_under(const KripkeModel& ref,
                                       const std::vector<KripkeModel>& cands,
                                       Metric metric);

std::string world_label(uint32_t w, const Universe& u);
std::string to_text(const KripkeModel& m);
std::string to_text(const ModelSet& ms);
KripkeModel parse_model_text(const std::string& text);
std::string export_dot(const KripkeModel& m);
std::string export_dot(const ModelSet& ms);

}  // namespace atc

#endif  // ATC_KRIPKE_HPP_
