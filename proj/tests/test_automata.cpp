#include <doctest.h>

#include "ctlstar2ltl/automata.hpp"
#include "ctlstar2ltl/graph.hpp"
#include "ctlstar2ltl/spec.hpp"
#include "generators.hpp"

using namespace ctlstar2ltl;

namespace {

Formula pnf(const char* text) { return to_pnf(parse_formula(text)); }

LassoWord word(const Alphabet& ab, std::vector<std::vector<std::string>> stem,
               std::vector<std::vector<std::string>> loop) {
  LassoWord w;
  for (const auto& s : stem) w.stem.push_back(ab.make(s));
  for (const auto& s : loop) w.loop.push_back(ab.make(s));
  return w;
}

}  // namespace

TEST_CASE("complement of cubes") {
  auto rest = complement({{0b01, 0b01}});
  REQUIRE(rest.size() == 1);
  CHECK(rest[0] == Cube{0b01, 0b00});
  CHECK(complement({Cube::top()}).empty());
  CHECK(complement({}).size() == 1);
  // a | b leaves !a & !b
  auto nor = complement({{0b01, 0b01}, {0b10, 0b10}});
  REQUIRE(nor.size() == 1);
  CHECK(nor[0] == Cube{0b11, 0b00});
}

TEST_CASE("NBW of true has one accepting state") {
  auto a = nbw_of_path_formula(Formula::tt(), Alphabet({"g"}));
  CHECK(state_count(a) == 1);
  CHECK(!a.sink);
  CHECK(a.accepting[a.initial]);
  CHECK(is_complete(a));
}

TEST_CASE("NBW of G p is one accepting state plus sink") {
  const Alphabet ab({"r", "g", "p"});
  auto a = nbw_of_path_formula(pnf("G p"), ab);
  CHECK(state_count(a) == 1);
  REQUIRE(a.sink);
  CHECK(a.accepting[0]);
  CHECK(!a.accepting[*a.sink]);
  CHECK(is_complete(a));
  CHECK(accepts_lasso(a, word(ab, {}, {{"p"}})));
  CHECK(!accepts_lasso(a, word(ab, {{"p"}}, {{"g"}})));
}

TEST_CASE("NBW for X(g && X(g && F !g)) matches the five-state shape") {
  const Alphabet ab({"r", "g"});
  auto a = nbw_of_path_formula(pnf("X (g && X (g && F !g))"), ab);
  CHECK(state_count(a) == 5);
  CHECK(is_complete(a));
  CHECK(accepts_lasso(a, word(ab, {{}, {"g"}, {"g"}, {}}, {{}})));
  CHECK(!accepts_lasso(a, word(ab, {{}, {"g"}}, {{"g"}})));
  CHECK(!accepts_lasso(a, word(ab, {{}, {}}, {{}})));
}

TEST_CASE("NBW of false is the bare sink") {
  auto a = nbw_of_path_formula(Formula::ff(), Alphabet({"g"}));
  CHECK(state_count(a) == 0);
  CHECK(a.sink == a.initial);
  CHECK(!accepts_lasso(a, word(Alphabet({"g"}), {}, {{}})));
}

TEST_CASE("accepts_lasso on G !g") {
  const Alphabet ab({"g"});
  auto a = nbw_of_path_formula(pnf("G !g"), ab);
  CHECK(accepts_lasso(a, word(ab, {}, {{}})));
  CHECK(!accepts_lasso(a, word(ab, {}, {{"g"}})));
}

TEST_CASE("eval_ltl_on_lasso basics") {
  const Alphabet ab({"g", "r"});
  CHECK(eval_ltl_on_lasso(pnf("F g"), ab, word(ab, {}, {{"g"}})));
  CHECK(!eval_ltl_on_lasso(pnf("F g"), ab, word(ab, {{"r"}}, {{}})));
  CHECK(eval_ltl_on_lasso(pnf("G F g"), ab, word(ab, {}, {{}, {"g"}})));
  CHECK(!eval_ltl_on_lasso(pnf("F G g"), ab, word(ab, {}, {{}, {"g"}})));
  CHECK(eval_ltl_on_lasso(pnf("r R g"), ab, word(ab, {{"g"}, {"g", "r"}}, {{}})));
  CHECK(!eval_ltl_on_lasso(pnf("r R g"), ab, word(ab, {{"g"}, {"r"}}, {{}})));
  CHECK(eval_ltl_on_lasso(pnf("X (g && X (g && F !g))"), ab, word(ab, {{}, {"g"}, {"g"}, {}}, {{}})));
}

TEST_CASE("language soundness against the lasso oracle") {
  testing::Rng rng(2024);
  const Alphabet ab({"a", "b"});
  int mismatches = 0;
  for (int i = 0; i < 1500; ++i) {
    auto f = to_pnf(testing::random_ltl(rng, {"a", "b"}, 1 + static_cast<int>(testing::pick(rng, 8))));
    auto a = nbw_of_path_formula(f, ab);
    CHECK(is_complete(a));
    for (int j = 0; j < 4; ++j) {
      auto w = testing::random_lasso(rng, 2, 4, 4);
      if (accepts_lasso(a, w) != eval_ltl_on_lasso(f, ab, w)) {
        ++mismatches;
        MESSAGE("mismatch on " << to_string(f));
      }
    }
  }
  CHECK(mismatches == 0);
}

TEST_CASE("construction is deterministic") {
  const Alphabet ab({"a", "b"});
  auto f = pnf("G (a -> F b) && F G !a");
  CHECK(to_dot(nbw_of_path_formula(f, ab)) == to_dot(nbw_of_path_formula(f, ab)));
}

TEST_CASE("exists_accepting_path") {
  SUBCASE("reachable accepting self-loop") {
    Digraph g;
    g.add_node(false);
    g.add_node(true);
    g.arcs[0].push_back({1, 7});
    g.arcs[1].push_back({1, 8});
    auto l = exists_accepting_path(g, 0);
    REQUIRE(l);
    CHECK(l->stem == std::vector<unsigned>{0});
    CHECK(l->stem_labels == std::vector<unsigned>{7});
    CHECK(l->loop == std::vector<unsigned>{1});
    CHECK(l->loop_labels == std::vector<unsigned>{8});
  }
  SUBCASE("acyclic graph") {
    Digraph g;
    g.add_node(true);
    g.add_node(true);
    g.arcs[0].push_back({1, 0});
    CHECK(!exists_accepting_path(g, 0));
  }
  SUBCASE("cycle through non-accepting nodes only") {
    Digraph g;
    g.add_node(true);
    g.add_node(false);
    g.add_node(false);
    g.arcs[0].push_back({1, 0});
    g.arcs[1].push_back({2, 0});
    g.arcs[2].push_back({1, 0});
    CHECK(!exists_accepting_path(g, 0));
    CHECK(accepting_future(g) == std::vector<bool>{false, false, false});
  }
  SUBCASE("longer loop is reconstructed in order") {
    Digraph g;
    for (int i = 0; i < 4; ++i) g.add_node(i == 1);
    g.arcs[0].push_back({1, 10});
    g.arcs[1].push_back({2, 11});
    g.arcs[2].push_back({3, 12});
    g.arcs[3].push_back({1, 13});
    auto l = exists_accepting_path(g, 0);
    REQUIRE(l);
    CHECK(l->loop == std::vector<unsigned>{1, 2, 3});
    CHECK(l->loop_labels == std::vector<unsigned>{11, 12, 13});
  }
}
