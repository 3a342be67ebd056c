#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "atc/contract_sem.hpp"
#include "atc/contract_syn.hpp"
#include "atc/boolean.hpp"
#include "atc/entail.hpp"
#include "atc/kripke.hpp"
#include "atc/syntax.hpp"

using namespace atc;

namespace {

Theory load(const char* name) {
  std::ifstream in(std::string(ATC_TEST_DATA_DIR) + "/" + name);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_theory(os.str()).theory;
}

Theory theory_over(const Universe& u, const std::string& text) {
  Universe copy = u;
  Theory th;
  th.universe = copy;
  std::istringstream is(text);
  std::string stmt;
  while (std::getline(is, stmt, ';')) {
    if (stmt.find_first_not_of(" \t\n") == std::string::npos) continue;
    th.add_law(parse_law(stmt, th.universe, false));
  }
  return th;
}

// Every expected theory matched by exactly one output and conversely.
bool equiv_family(const TheoryFamily& got, const std::vector<Theory>& expect) {
  if (got.theories.size() != expect.size()) return false;
  std::vector<bool> used(expect.size(), false);
  for (const auto& t : got.theories) {
    bool matched = false;
    for (size_t i = 0; i < expect.size(); ++i) {
      if (used[i]) continue;
      if (theory_equiv(t, expect[i])) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

const char* kCoffeeBase =
    "coffee -> hot;"
    "~coffee -> [buy] coffee; token -> [buy] ~token;"
    "~token -> [buy] false; coffee -> [buy] coffee; hot -> [buy] hot;";

}  // namespace

TEST_CASE("executability contraction reproduces the three worked theories") {
  Theory th = load("coffee.th");
  Law law = parse_law("token -> <buy> true", th.universe, false);
  TheoryFamily family = contract_exec(th, law);
  REQUIRE(family.theories.size() == 3);
  std::vector<Theory> expect;
  for (const char* execs :
       {"token & ~coffee & hot -> <buy> true;"
        "token & ~coffee & ~hot -> <buy> true;",
        "token & coffee & hot -> <buy> true;"
        "token & ~coffee & ~hot -> <buy> true;",
        "token & coffee & hot -> <buy> true;"
        "token & ~coffee & hot -> <buy> true;"})
    expect.push_back(
        theory_over(th.universe, std::string(kCoffeeBase) + execs));
  CHECK(equiv_family(family, expect));
}

TEST_CASE("the worked executability contexts are the consistent ones") {
  Theory th = load("coffee.th");
  Law law = parse_law("token -> <buy> true", th.universe, false);
  TheoryFamily family = contract_exec(th, law);
  // each output theory drops executability in exactly one context
  KripkeModel big = big_model(th);
  std::vector<uint32_t> blocked;
  for (const auto& out : family.theories) {
    int count = 0;
    uint32_t world = 0;
    for (uint32_t w : big.worlds) {
      if (!eval(law.pre, w)) continue;
      bool covered = false;
      for (const auto& x : out.execs)
        if (eval(x.pre, w)) covered = true;
      if (!covered) {
        ++count;
        world = w;
      }
    }
    CHECK(count == 1);
    blocked.push_back(world);
  }
  std::sort(blocked.begin(), blocked.end());
  CHECK(blocked == std::vector<uint32_t>{0b001, 0b101, 0b111});
}

TEST_CASE("a non-entailed law leaves the theory untouched") {
  Theory th = load("coffee.th");
  Law law = parse_law("~token -> <buy> true", th.universe, false);
  TheoryFamily family = contract_exec(th, law);
  REQUIRE(family.theories.size() == 1);
  CHECK(family.theories[0] == th);
}

TEST_CASE("contraction demands modularity unless overridden") {
  Theory bad = load("coffee_bad.th");
  Law law = parse_law("token -> [buy] hot", bad.universe, false);
  CHECK_THROWS_AS(contract_effect(bad, law), PreconditionError);
  ContractOptions opts;
  opts.allow_non_modular = true;
  CHECK_NOTHROW(contract_effect(bad, law, opts));
}

TEST_CASE("minimum effect supports for the worked example") {
  Theory th = load("coffee.th");
  Universe u = th.universe;
  Law law = parse_law("token -> [buy] hot", u, false);
  EffectSupports s = minimum_effect_supports(th, law);
  REQUIRE(s.supports.size() == 2);
  std::vector<Law> s1{parse_law("coffee -> [buy] coffee", u, false),
                      parse_law("~coffee -> [buy] coffee", u, false)};
  std::vector<Law> s2{parse_law("hot -> [buy] hot", u, false),
                      parse_law("~coffee -> [buy] coffee", u, false)};
  auto matches = [&](const std::vector<Law>& want) {
    for (const auto& got : s.supports) {
      if (got.size() != want.size()) continue;
      bool all = true;
      for (const auto& l : want)
        if (std::find(got.begin(), got.end(), l) == got.end()) all = false;
      if (all) return true;
    }
    return false;
  };
  CHECK(matches(s1));
  CHECK(matches(s2));
  CHECK(s.union_laws.size() == 3);
}

TEST_CASE("support edge cases") {
  Theory th = parse_theory(
      "atoms: p, q; actions: a; p -> [a] q; q -> [a] p;").theory;
  Universe u = th.universe;
  Law member = parse_law("p -> [a] q", u, false);
  EffectSupports s = minimum_effect_supports(th, member);
  bool has_singleton = false;
  for (const auto& sup : s.supports)
    if (sup.size() == 1 && sup[0] == member) has_singleton = true;
  CHECK(has_singleton);

  Law taut = parse_law("p -> [a] (q | ~q)", u, false);
  EffectSupports t = minimum_effect_supports(th, taut);
  REQUIRE(t.supports.size() == 1);
  CHECK(t.supports[0].empty());
  CHECK(t.union_laws.empty());
}

TEST_CASE("effect contraction reproduces the three worked theories") {
  Theory th = load("coffee.th");
  Law law = parse_law("token -> [buy] hot", th.universe, false);
  TheoryFamily family = contract_effect(th, law);
  REQUIRE(family.theories.size() == 3);
  const char* shared =
      "coffee -> hot; token -> <buy> true;"
      "token -> [buy] ~token; ~token -> [buy] false;";
  std::vector<Theory> expect;
  expect.push_back(theory_over(
      th.universe,
      std::string(shared) +
          "coffee & ~(token & coffee & hot) -> [buy] coffee;"
          "hot & ~(token & coffee & hot) -> [buy] hot;"
          "~coffee & ~(token & coffee & hot) -> [buy] coffee;"
          "token & coffee & hot -> [buy] (coffee | ~hot);"
          "token & coffee & hot -> [buy] (hot | ~coffee);"));
  expect.push_back(theory_over(
      th.universe,
      std::string(shared) +
          "coffee & ~(token & ~coffee & ~hot) -> [buy] coffee;"
          "hot & ~(token & ~coffee & ~hot) -> [buy] hot;"
          "~coffee & ~(token & ~coffee & ~hot) -> [buy] coffee;"
          "token & ~coffee & ~hot -> [buy] (coffee | ~hot);"));
  expect.push_back(theory_over(
      th.universe,
      std::string(shared) +
          "coffee & ~(token & ~coffee & hot) -> [buy] coffee;"
          "hot & ~(token & ~coffee & hot) -> [buy] hot;"
          "~coffee & ~(token & ~coffee & hot) -> [buy] coffee;"
          "token & ~coffee & hot -> [buy] (hot | ~coffee);"
          "token & ~coffee & hot -> [buy] (coffee | ~hot);"));
  CHECK(equiv_family(family, expect));
}

TEST_CASE("the frame axiom blocks the token preservation law") {
  Theory th = load("coffee.th");
  Universe u = th.universe;
  Law law = parse_law("token -> [buy] hot", u, false);
  TheoryFamily family = contract_effect(th, law);
  Formula tch = parse_formula("token & coffee & hot", u, false);
  Formula hot_or_token = parse_formula("hot | token", u, false);
  for (const auto& out : family.theories)
    for (const auto& e : out.effects) {
      bool same_ante = cpl_equiv(e.pre, tch, u);
      bool same_post = cpl_equiv(e.post, hot_or_token, u);
      CHECK(!(same_ante && same_post));
    }
}

TEST_CASE("the unsound-contraction example is reproduced faithfully") {
  Theory th = load("counterex1.th");
  Universe u = th.universe;
  Law law = parse_law("p1 -> [a] ~p2", u, false);
  ContractOptions opts;
  opts.allow_non_modular = true;
  TheoryFamily family = contract_effect(th, law, opts);
  Formula ante = parse_formula("p1 & ~p2", u, false);
  Formula post = parse_formula("~p2 | p1", u, false);
  const Theory* culprit = nullptr;
  for (const auto& out : family.theories)
    for (const auto& e : out.effects)
      if (cpl_equiv(e.pre, ante, u) && cpl_equiv(e.post, post, u))
        culprit = &out;
  REQUIRE(culprit != nullptr);
  // the minimally contracted model is not a model of that theory
  KripkeModel m = KripkeModel::empty(u);
  for (uint32_t w : {0b01u, 0b00u, 0b10u}) m.add_world(w);
  m.add_edge(0, 0b01, 0b00);
  m.add_edge(0, 0b01, 0b01);
  m.add_edge(0, 0b01, 0b10);  // the contraction's new arrow
  CHECK(!globally_satisfies(m, *culprit));
}

TEST_CASE("classical contraction widens the valuation set by one world") {
  Universe u = load("coffee.th").universe;
  std::vector<Formula> statics{parse_formula("coffee -> hot", u, false)};
  Formula phi = parse_formula("coffee -> hot", u, false);
  auto results = classical_contract(statics, phi, u);
  REQUIRE(results.size() == 2);
  auto before = valuations_of(statics[0], u);
  for (const auto& s_minus : results) {
    REQUIRE(s_minus.size() == 1);
    auto after = valuations_of(s_minus[0], u);
    CHECK(after.size() == before.size() + 1);
    for (uint32_t v : before)
      CHECK(std::binary_search(after.begin(), after.end(), v));
  }

  Formula other = parse_formula("token", u, false);
  auto kept = classical_contract(statics, other, u);
  REQUIRE(kept.size() == 1);
  CHECK(kept[0] == statics);

  CHECK_THROWS_AS(classical_contract(statics, Formula::truth(), u),
                  ArgumentError);
}

TEST_CASE("static contraction reproduces the two worked theories") {
  Theory th = load("coffee.th");
  Universe u = th.universe;
  Formula phi = parse_formula("coffee -> hot", u, false);
  TheoryFamily family = contract_static(th, phi);
  REQUIRE(family.theories.size() == 2);
  const char* tail =
      "token & (coffee -> hot) -> <buy> true;"
      "~coffee -> [buy] coffee; token -> [buy] ~token;"
      "~token -> [buy] false; coffee -> [buy] coffee; hot -> [buy] hot;"
      "coffee & ~hot -> [buy] false;";
  std::vector<Theory> expect;
  expect.push_back(theory_over(
      u, "~(~token & coffee & ~hot);" + std::string(tail)));
  expect.push_back(theory_over(
      u, "~(token & coffee & ~hot);" + std::string(tail)));
  CHECK(equiv_family(family, expect));
  // effect laws survive unchanged
  for (const auto& out : family.theories)
    for (const auto& e : th.effects)
      CHECK(std::find(out.effects.begin(), out.effects.end(), e) !=
            out.effects.end());
  // and each output carries a law equivalent to (coffee & ~hot) -> [buy] false
  Formula cnh = parse_formula("coffee & ~hot", u, false);
  for (const auto& out : family.theories) {
    bool found = false;
    for (const auto& e : out.effects)
      if (cpl_equiv(e.pre, cnh, u) && !cpl_sat(e.post, u)) found = true;
    CHECK(found);
  }
}

TEST_CASE("static contraction of a non-consequence is a no-op") {
  Theory th = load("coffee.th");
  Formula phi = parse_formula("token", th.universe, false);
  TheoryFamily family = contract_static(th, phi);
  REQUIRE(family.theories.size() == 1);
  CHECK(family.theories[0] == th);
}

TEST_CASE("dispatch covers the three law kinds") {
  Theory th = load("coffee.th");
  Universe u = th.universe;
  CHECK(contract(th, parse_law("token -> <buy> true", u, false))
            .theories.size() == 3);
  CHECK(contract(th, parse_law("coffee -> hot", u, false)).theories.size() ==
        2);
  CHECK(contract(th, parse_law("token -> [buy] hot", u, false))
            .theories.size() == 3);
}

TEST_CASE("theory equivalence is semantic") {
  Theory th = load("coffee.th");
  Theory padded = th;
  padded.add_law(Law::static_law(Formula::truth()));
  CHECK(theory_equiv(th, padded));

  Law law = parse_law("token -> <buy> true", th.universe, false);
  TheoryFamily family = contract_exec(th, law);
  REQUIRE(family.theories.size() == 3);
  CHECK(!theory_equiv(family.theories[0], family.theories[1]));
}

TEST_CASE("vacuously entailed executabilities contract to the theory itself") {
  Theory th = load("success_caveat.th");
  Law law = parse_law("p -> <a> true", th.universe, false);
  TheoryFamily family = contract_exec(th, law);
  REQUIRE(family.theories.size() == 1);
  CHECK(family.theories[0] == th);
}

TEST_CASE("the incompleteness example: a stray model of the contraction") {
  Theory th = load("counterex2.th");
  Universe u = th.universe;
  Law law = parse_law("p -> <a> true", u, false);
  ContractOptions opts;
  opts.allow_non_modular = true;
  TheoryFamily family = contract_exec(th, law, opts);
  REQUIRE(family.theories.size() == 1);
  Theory expect = theory_over(
      u, "p -> [a] false; true & ~p -> <a> true;");
  CHECK(family.theories[0] == expect);

  // M' adds the p-world and satisfies the contracted theory
  KripkeModel m_prime = KripkeModel::empty(u);
  m_prime.add_world(0b0);
  m_prime.add_world(0b1);
  m_prime.add_edge(0, 0b0, 0b0);
  CHECK(globally_satisfies(m_prime, family.theories[0]));

  // but the semantic contraction cannot reach it: the only model of the
  // theory satisfies the law vacuously, so nothing changes
  KripkeModel m = KripkeModel::empty(u);
  m.add_world(0b0);
  m.add_edge(0, 0b0, 0b0);
  CHECK(globally_satisfies(m, th));
  CHECK(contract_exec_model(m, law, Metric::Inclusion).empty());
}
