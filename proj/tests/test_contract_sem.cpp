#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "atc/contract_sem.hpp"
#include "atc/boolean.hpp"
#include "atc/entail.hpp"
#include "atc/postulates.hpp"
#include "atc/syntax.hpp"

using namespace atc;

namespace {

Theory load(const char* name) {
  std::ifstream in(std::string(ATC_TEST_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_theory(os.str()).theory;
}

bool same_models(std::vector<KripkeModel> a, std::vector<KripkeModel> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

// Raw-definition reference: enumerate every admissible modification, then
// keep the closest ones.
std::vector<KripkeModel> brute_exec(const KripkeModel& m, const Law& law,
                                    Metric metric) {
  const auto& edges = m.rel[law.action];
  std::vector<Edge> droppable;
  for (const auto& e : edges)
    if (eval(law.pre, e.first)) droppable.push_back(e);
  std::vector<KripkeModel> cands;
  for (uint32_t mask = 0; mask < (1u << droppable.size()); ++mask) {
    KripkeModel m2 = m;
    for (size_t i = 0; i < droppable.size(); ++i)
      if (mask & (1u << i))
        m2.remove_edge(law.action, droppable[i].first, droppable[i].second);
    if (!satisfies_law(m2, law)) cands.push_back(std::move(m2));
  }
  return minimal_under(m, cands, metric);
}

std::vector<KripkeModel> brute_effect(const KripkeModel& m,
                                      const ModelSet& mset, const Law& law,
                                      Metric metric) {
  std::vector<Edge> addable;
  for (uint32_t w : m.worlds) {
    if (!eval(law.pre, w)) continue;
    for (uint32_t t : relevant_target_worlds(w, law, m, mset))
      if (!m.has_edge(law.action, w, t)) addable.push_back({w, t});
  }
  std::vector<KripkeModel> cands;
  for (uint32_t mask = 0; mask < (1u << addable.size()); ++mask) {
    KripkeModel m2 = m;
    for (size_t i = 0; i < addable.size(); ++i)
      if (mask & (1u << i))
        m2.add_edge(law.action, addable[i].first, addable[i].second);
    if (!satisfies_law(m2, law)) cands.push_back(std::move(m2));
  }
  return minimal_under(m, cands, metric);
}

std::vector<KripkeModel> brute_static(const KripkeModel& m, const Formula& phi,
                                      Metric metric) {
  int n = m.universe.num_atoms();
  std::vector<uint32_t> fresh;
  for (uint32_t v = 0; v < (1u << n); ++v)
    if (!m.has_world(v)) fresh.push_back(v);
  std::vector<KripkeModel> cands;
  for (uint32_t mask = 0; mask < (1u << fresh.size()); ++mask) {
    KripkeModel m2 = m;
    for (size_t i = 0; i < fresh.size(); ++i)
      if (mask & (1u << i)) m2.add_world(fresh[i]);
    if (!globally_satisfies(m2, phi)) cands.push_back(std::move(m2));
  }
  return minimal_under(m, cands, metric);
}

// The §9.1 model over p1, p2.
KripkeModel fig17_model(Universe& u) {
  u.add_atom("p1");
  u.add_atom("p2");
  u.add_action("a");
  KripkeModel m = KripkeModel::empty(u);
  for (uint32_t w : {0b11u, 0b01u, 0b00u}) m.add_world(w);
  m.add_edge(0, 0b11, 0b01);
  m.add_edge(0, 0b01, 0b11);
  m.add_edge(0, 0b01, 0b00);
  return m;
}

}  // namespace

TEST_CASE("contracting the coffee executability gives the three known models") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  Law law = parse_law("token -> <buy> true", th.universe, false);
  auto out = contract_exec_model(big, law, Metric::Inclusion);
  REQUIRE(out.size() == 3);
  std::vector<KripkeModel> expect;
  for (uint32_t w : {0b111u, 0b101u, 0b001u}) {
    KripkeModel m2 = big;
    m2.remove_edges_from(0, w);
    expect.push_back(m2);
  }
  CHECK(same_models(out, expect));
  CHECK(same_models(out, brute_exec(big, law, Metric::Inclusion)));
}

TEST_CASE("exec contraction with an impossible antecedent is empty") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  Law law = Law::exec(Formula::falsity(), 0);
  CHECK(contract_exec_model(big, law, Metric::Inclusion).empty());
}

TEST_CASE("exec contraction passes through an already falsified law") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  Law law = parse_law("~token -> <buy> true", th.universe, false);
  auto out = contract_exec_model(big, law, Metric::Inclusion);
  REQUIRE(out.size() == 1);
  CHECK(out[0] == big);
}

TEST_CASE("the metric changes the §-style executability contraction") {
  Universe u;
  KripkeModel m = fig17_model(u);
  Law law = parse_law("p1 -> <a> true", u, false);
  auto incl = contract_exec_model(m, law, Metric::Inclusion);
  CHECK(incl.size() == 2);
  auto card = contract_exec_model(m, law, Metric::Cardinality);
  REQUIRE(card.size() == 1);
  // only the single-arrow removal survives the counting metric
  KripkeModel expected = m;
  expected.remove_edges_from(0, 0b11);
  CHECK(card[0] == expected);
}

TEST_CASE("relevant targets in the coffee big model") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law law = parse_law("token -> [buy] hot", th.universe, false);
  // every token world points only at {~token,~coffee,~hot}
  for (uint32_t w : {0b111u, 0b101u, 0b001u}) {
    auto targets = relevant_target_worlds(w, law, big, mset);
    REQUIRE(targets.size() == 1);
    CHECK(targets[0] == 0b000);
  }
  // a tautological consequent leaves nothing to point at
  Law taut = Law::effect(Formula::atom(0), 0, Formula::truth());
  CHECK(relevant_target_worlds(0b111, taut, big, mset).empty());
  CHECK_THROWS_AS(relevant_target_worlds(0b010, law, big, mset),
                  ArgumentError);
}

TEST_CASE("relevant targets for the revision walkthrough") {
  Theory th = load("fig12.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law inexec = parse_law("~token -> [buy] false", th.universe, false);
  auto targets = relevant_target_worlds(0b000, inexec, big, mset);
  REQUIRE(targets.size() == 1);
  CHECK(targets[0] == 0b110);  // {~token, coffee, hot}
  for (uint32_t w : {0b100u, 0b110u}) {
    auto t = relevant_target_worlds(w, inexec, big, mset);
    REQUIRE(t.size() == 1);
    CHECK(t[0] == 0b110);
  }
}

TEST_CASE("contracting the coffee effect law adds single arrows") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law law = parse_law("token -> [buy] hot", th.universe, false);
  auto out = contract_effect_model(big, mset, law, Metric::Inclusion);
  REQUIRE(out.size() == 3);
  std::vector<KripkeModel> expect;
  for (uint32_t w : {0b111u, 0b101u, 0b001u}) {
    KripkeModel m2 = big;
    m2.add_edge(0, w, 0b000);
    expect.push_back(m2);
  }
  CHECK(same_models(out, expect));
  CHECK(same_models(out, brute_effect(big, mset, law, Metric::Inclusion)));
}

TEST_CASE("effect contraction with an unsatisfiable antecedent is empty") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law law = Law::effect(Formula::falsity(), 0, Formula::atom(2));
  CHECK(contract_effect_model(big, mset, law, Metric::Inclusion).empty());
}

TEST_CASE("the first counterexample's contraction adds the diagonal arrow") {
  Theory th = load("counterex1.th");
  KripkeModel m = KripkeModel::empty(th.universe);
  for (uint32_t w : {0b01u, 0b00u, 0b10u}) m.add_world(w);
  m.add_edge(0, 0b01, 0b00);
  m.add_edge(0, 0b01, 0b01);
  ModelSet mset;
  mset.insert(m);
  Law law = parse_law("p1 -> [a] ~p2", th.universe, false);
  auto out = contract_effect_model(m, mset, law, Metric::Inclusion);
  REQUIRE(out.size() == 1);
  KripkeModel expect = m;
  expect.add_edge(0, 0b01, 0b10);
  CHECK(out[0] == expect);
}

TEST_CASE("contracting the static law adds one of the two missing worlds") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  Formula phi = parse_formula("coffee -> hot", th.universe, false);
  auto out = contract_static_model(big, phi, Metric::Inclusion);
  REQUIRE(out.size() == 2);
  std::vector<KripkeModel> expect;
  for (uint32_t v : {0b011u, 0b010u}) {
    KripkeModel m2 = big;
    m2.add_world(v);
    expect.push_back(m2);
  }
  CHECK(same_models(out, expect));
  CHECK(same_models(out, brute_static(big, phi, Metric::Inclusion)));
  for (const auto& m2 : out) CHECK(m2.rel == big.rel);
}

TEST_CASE("static contraction edge cases") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  CHECK(contract_static_model(big, Formula::truth(), Metric::Inclusion)
            .empty());
  Formula token = parse_formula("token", th.universe, false);
  auto out = contract_static_model(big, token, Metric::Inclusion);
  REQUIRE(out.size() == 1);  // already falsified somewhere
  CHECK(out[0] == big);
}

TEST_CASE("set-level contraction wraps the single-model results") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law exec_law = parse_law("token -> <buy> true", th.universe, false);
  auto out = contract_model_set(mset, exec_law, Metric::Inclusion);
  CHECK(out.model_sets.size() == 3);
  for (const auto& ms : out.model_sets) {
    CHECK(ms.size() == 2);
    CHECK(ms.contains(big));
  }

  Formula phi = parse_formula("coffee -> hot", th.universe, false);
  auto stat = contract_model_set(mset, Law::static_law(phi),
                                 Metric::Inclusion);
  CHECK(stat.model_sets.size() == 2);

  // a law already falsified in a member keeps the set unchanged
  Law falsified = parse_law("~token -> <buy> true", th.universe, false);
  auto keep = contract_model_set(mset, falsified, Metric::Inclusion);
  REQUIRE(keep.model_sets.size() == 1);
  CHECK(keep.model_sets[0] == mset);
}

TEST_CASE("every contraction output falsifies the law or passes through") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  for (const char* text :
       {"token -> <buy> true", "token -> [buy] hot", "coffee -> hot"}) {
    Law law = parse_law(text, th.universe, false);
    ContractionOutcome out = contract_model_set(mset, law, Metric::Inclusion);
    for (const auto& ms : out.model_sets) {
      bool someone_falsifies = false;
      for (const auto& m : ms.models)
        if (!satisfies_law(m, law)) someone_falsifies = true;
      CHECK(someone_falsifies);
    }
  }
}

TEST_CASE("structural guarantees of the three contraction shapes") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  ModelSet mset;
  mset.insert(big);
  Law exec_law = parse_law("token -> <buy> true", th.universe, false);
  for (const auto& m2 : contract_exec_model(big, exec_law, Metric::Inclusion)) {
    CHECK(m2.worlds == big.worlds);
    for (const auto& e : big.rel[0])
      if (!m2.has_edge(0, e.first, e.second))
        CHECK(eval(exec_law.pre, e.first));  // removals leave φ-worlds only
  }
  Law eff = parse_law("token -> [buy] hot", th.universe, false);
  for (const auto& m2 : contract_effect_model(big, mset, eff,
                                              Metric::Inclusion)) {
    CHECK(m2.worlds == big.worlds);
    for (const auto& e : big.rel[0]) CHECK(m2.has_edge(0, e.first, e.second));
  }
}

TEST_CASE("generator outputs equal the raw-definition reference on a corpus") {
  for (int i = 0; i < 25; ++i) {
    Theory th = random_theory(6000 + i, 2, 1, true);
    KripkeModel big = big_model(th);
    ModelSet mset;
    mset.insert(big);
    Universe u = th.universe;
    for (Metric metric : {Metric::Inclusion, Metric::Cardinality}) {
      Law exec_law = parse_law("p -> <a> true", u, false);
      CHECK(same_models(contract_exec_model(big, exec_law, metric),
                        brute_exec(big, exec_law, metric)));
      Law eff = parse_law("p -> [a] q", u, false);
      CHECK(same_models(contract_effect_model(big, mset, eff, metric),
                        brute_effect(big, mset, eff, metric)));
      Formula phi = parse_formula("p | q", u, false);
      CHECK(same_models(contract_static_model(big, phi, metric),
                        brute_static(big, phi, metric)));
    }
  }
}
