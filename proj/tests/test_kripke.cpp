#include <doctest.h>

#include <fstream>
#include <sstream>

#include "atc/boolean.hpp"
#include "atc/entail.hpp"
#include "atc/kripke.hpp"
#include "atc/postulates.hpp"
#include "atc/syntax.hpp"

using namespace atc;

namespace {

std::string data_file(const char* name) {
  return std::string(ATC_TEST_DATA_DIR) + "/" + name;
}

Theory load(const char* name) {
  std::ifstream in(data_file(name));
  std::ostringstream os;
  os << in.rdbuf();
  return parse_theory(os.str()).theory;
}

// The two-atom, two-action introduction model.
KripkeModel intro_model(Universe& u) {
  u.add_atom("p1");
  u.add_atom("p2");
  u.add_action("a1");
  u.add_action("a2");
  KripkeModel m = KripkeModel::empty(u);
  uint32_t p1p2 = 0b11, p1 = 0b01, p2 = 0b10;
  m.add_world(p1p2);
  m.add_world(p1);
  m.add_world(p2);
  m.add_edge(0, p1p2, p1);
  m.add_edge(0, p1p2, p2);
  m.add_edge(0, p1, p1);
  m.add_edge(0, p1, p2);
  m.add_edge(1, p1p2, p2);
  m.add_edge(1, p2, p2);
  return m;
}

}  // namespace

TEST_CASE("local and global truth on the introduction model") {
  Universe u;
  KripkeModel m = intro_model(u);
  Formula f = parse_formula("p1 -> [a2] p2", u, false);
  CHECK(globally_satisfies(m, f));
  CHECK(globally_satisfies(m, parse_formula("p1 | p2", u, false)));
  CHECK(satisfies(m, 0b11, Formula::truth()));
  // no a2-successor from {p1,~p2}: the box is vacuous there
  CHECK(satisfies(m, 0b01, Formula::box(1, Formula::falsity())));
  CHECK_THROWS_AS(satisfies(m, 0b00, Formula::truth()), ArgumentError);
}

TEST_CASE("a hand model of the coffee theory checks out globally") {
  Theory th = load("coffee.th");
  KripkeModel m = KripkeModel::empty(th.universe);
  uint32_t tch = 0b111, nch = 0b110, tnc_h = 0b101, tnc_nh = 0b001;
  for (uint32_t w : {tch, nch, tnc_h, tnc_nh}) m.add_world(w);
  m.add_edge(0, tch, nch);
  m.add_edge(0, tnc_h, nch);
  m.add_edge(0, tnc_nh, nch);
  CHECK(globally_satisfies(m, th));
  CHECK(globally_satisfies(m, std::vector<Law>{}));
}

TEST_CASE("the first counterexample model satisfies its theory") {
  Theory th = load("counterex1.th");
  KripkeModel m = KripkeModel::empty(th.universe);
  uint32_t p1 = 0b01, none = 0b00, p2 = 0b10;
  for (uint32_t w : {p1, none, p2}) m.add_world(w);
  m.add_edge(0, p1, none);
  m.add_edge(0, p1, p1);
  CHECK(globally_satisfies(m, th));
}

TEST_CASE("big model of the coffee theory is exactly the six-world model") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  CHECK(big.worlds == std::vector<uint32_t>{0b000, 0b001, 0b100, 0b101,
                                            0b110, 0b111});
  std::vector<Edge> expect{{0b001, 0b110}, {0b101, 0b110}, {0b111, 0b110}};
  CHECK(big.rel[0] == expect);
}

TEST_CASE("without effect laws the big relation is total") {
  Theory th = parse_theory("atoms: p; actions: a; p -> <a> true;").theory;
  KripkeModel big = big_model(th);
  CHECK(big.rel[0].size() == 4);
}

TEST_CASE("inexecutability silences its worlds in the big model") {
  Theory th = parse_theory(
      "atoms: token; actions: buy; ~token -> [buy] false;").theory;
  KripkeModel big = big_model(th);
  for (const auto& e : big.rel[0]) CHECK((e.first & 1) == 1);
  // token-world arrows are unrestricted
  CHECK(big.rel[0].size() == 2);
}

TEST_CASE("closeness compares symmetric differences lexicographically") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  KripkeModel one = big, two = big;
  one.remove_edge(0, 0b001, 0b110);
  two.remove_edge(0, 0b001, 0b110);
  two.remove_edge(0, 0b101, 0b110);
  CHECK(closeness_leq(big, one, two, Metric::Inclusion));
  CHECK(!closeness_leq(big, two, one, Metric::Inclusion));
  CHECK(closeness_leq(big, one, two, Metric::Cardinality));

  // incomparable single-world additions
  KripkeModel w1 = big, w2 = big;
  w1.add_world(0b010);
  w2.add_world(0b011);
  CHECK(!closeness_leq(big, w1, w2, Metric::Inclusion));
  CHECK(!closeness_leq(big, w2, w1, Metric::Inclusion));
}

TEST_CASE("closeness is reflexive and transitive on candidate sets") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  std::vector<KripkeModel> cands;
  for (int i = 0; i < 3; ++i) {
    KripkeModel m = big;
    if (i >= 1) m.remove_edge(0, 0b001, 0b110);
    if (i >= 2) m.remove_edge(0, 0b101, 0b110);
    cands.push_back(m);
  }
  for (const auto& a : cands) CHECK(closeness_leq(big, a, a, Metric::Inclusion));
  for (const auto& a : cands)
    for (const auto& b : cands)
      for (const auto& c : cands)
        if (closeness_leq(big, a, b, Metric::Inclusion) &&
            closeness_leq(big, b, c, Metric::Inclusion))
          CHECK(closeness_leq(big, a, c, Metric::Inclusion));
}

TEST_CASE("minimal_under keeps incomparable candidates and collapses chains") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  std::vector<KripkeModel> drops;
  for (const auto& e : big.rel[0]) {
    KripkeModel m = big;
    m.remove_edge(0, e.first, e.second);
    drops.push_back(m);
  }
  CHECK(minimal_under(big, drops, Metric::Inclusion).size() == 3);
  CHECK(minimal_under(big, {big}, Metric::Inclusion).size() == 1);

  KripkeModel m1 = big, m2 = big, m3 = big;
  m2.remove_edge(0, 0b001, 0b110);
  m3.remove_edge(0, 0b001, 0b110);
  m3.remove_edge(0, 0b101, 0b110);
  auto kept = minimal_under(big, {m1, m2, m3}, Metric::Inclusion);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == m1);
}

TEST_CASE("dot export is deterministic and shows every node and edge") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  std::string dot = export_dot(big);
  CHECK(dot == export_dot(big));
  size_t nodes = 0, edges = 0, pos = 0;
  while ((pos = dot.find("label=\"", pos)) != std::string::npos) {
    ++pos;
    ++nodes;
  }
  // 6 node labels + 3 edge labels
  CHECK(nodes == 9);
  pos = 0;
  while ((pos = dot.find(" -> ", pos)) != std::string::npos) {
    ++pos;
    ++edges;
  }
  CHECK(edges == 3);

  KripkeModel empty = KripkeModel::empty(th.universe);
  std::string empty_dot = export_dot(empty);
  CHECK(empty_dot.find("w0") == std::string::npos);
}

TEST_CASE("the big model satisfies the static and effect laws by construction") {
  for (int i = 0; i < 40; ++i) {
    Theory th = random_theory(7000 + i, 3, 2, false);
    if (!cpl_sat(th.statics_conj(), th.universe)) continue;
    KripkeModel big = big_model(th);
    for (const auto& s : th.statics)
      CHECK(globally_satisfies(big, s));
    for (const auto& e : th.effects) CHECK(satisfies_law(big, e));
  }
}

TEST_CASE("model text round trips through the parser") {
  Theory th = load("coffee.th");
  KripkeModel big = big_model(th);
  KripkeModel back = parse_model_text(to_text(big));
  CHECK(back.worlds == big.worlds);
  CHECK(back.rel == big.rel);
}
