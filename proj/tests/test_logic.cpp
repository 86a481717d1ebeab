#include <doctest.h>

#include "ctlstar2ltl/formula.hpp"
#include "ctlstar2ltl/spec.hpp"
#include "ctlstar2ltl/subformulas.hpp"
#include "generators.hpp"

using namespace ctlstar2ltl;

namespace {

Formula pnf(const char* text) { return to_pnf(parse_formula(text)); }

}  // namespace

TEST_CASE("parse_spec desugars and normalizes") {
  auto s = parse_spec("INPUTS r; OUTPUTS g; FORMULA A G (r -> F g);");
  CHECK(s.inputs == std::vector<std::string>{"r"});
  CHECK(s.outputs == std::vector<std::string>{"g"});
  const auto expected = Formula::forall(Formula::release(
      Formula::ff(), Formula::disj(Formula::lit("r", false), Formula::until(Formula::tt(), Formula::lit("g")))));
  CHECK(s.formula == expected);
  CHECK(is_pnf(s.formula));
  CHECK(to_string(s.formula) == "A G (!r || F g)");
}

TEST_CASE("parse_spec accepts the three-conjunct example") {
  auto s = parse_spec("INPUTS r; OUTPUTS g; FORMULA (E G !g) && (A G (E F !g)) && (E F g);");
  CHECK(to_string(s.formula) == "E G !g && A G E F !g && E F g");
  CHECK(s.formula.is(Op::And));
}

TEST_CASE("input conjunction is legal under E") {
  auto s = parse_spec("INPUTS r; OUTPUTS g; FORMULA E (r && g);");
  CHECK(s.formula == Formula::exists(Formula::conj(Formula::lit("r"), Formula::lit("g"))));
}

TEST_CASE("parse errors carry positions") {
  SUBCASE("syntax") {
    try {
      parse_spec("INPUTS r;\nOUTPUTS g;\nFORMULA A G (r -> );");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
      CHECK(e.column() == 19);
    }
  }
  SUBCASE("undeclared proposition") {
    try {
      parse_spec("INPUTS r; OUTPUTS g; FORMULA A G h;");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
      CHECK(e.column() == 34);
    }
  }
  SUBCASE("input at state level") {
    try {
      parse_spec("INPUTS r; OUTPUTS g; FORMULA g && r;");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(std::string(e.what()).find("input 'r'") != std::string::npos);
      CHECK(e.column() == 35);
    }
  }
  SUBCASE("temporal operator without quantifier") {
    CHECK_THROWS_AS(parse_spec("INPUTS r; OUTPUTS g; FORMULA G g;"), ParseError);
  }
  SUBCASE("overlapping declarations") {
    CHECK_THROWS_AS(parse_spec("INPUTS r; OUTPUTS r; FORMULA true;"), ParseError);
  }
  SUBCASE("ltl spec rejects quantifiers") {
    CHECK_THROWS_AS(parse_ltl_spec("INPUTS r; OUTPUTS g; FORMULA E g;"), ParseError);
  }
}

TEST_CASE("comments and precedence") {
  auto f = parse_formula("# leading comment\n a || b && c -> d <-> e # trailing");
  CHECK(f == Formula::iff(Formula::implies(Formula::disj(Formula::lit("a"),
                                                         Formula::conj(Formula::lit("b"), Formula::lit("c"))),
                                           Formula::lit("d")),
                          Formula::lit("e")));
  // binary temporal operators bind tighter than unary ones
  CHECK(parse_formula("X a U b") == Formula::next(Formula::until(Formula::lit("a"), Formula::lit("b"))));
  CHECK(parse_formula("a U b U c") ==
        Formula::until(Formula::lit("a"), Formula::until(Formula::lit("b"), Formula::lit("c"))));
  CHECK(parse_formula("a -> b -> c") ==
        Formula::implies(Formula::lit("a"), Formula::implies(Formula::lit("b"), Formula::lit("c"))));
}

TEST_CASE("to_pnf dualities") {
  CHECK(pnf("!(a U b)") == Formula::release(Formula::lit("a", false), Formula::lit("b", false)));
  CHECK(pnf("!(a R b)") == Formula::until(Formula::lit("a", false), Formula::lit("b", false)));
  CHECK(pnf("!A G g") == pnf("E F !g"));
  CHECK(pnf("!!g") == Formula::lit("g"));
  CHECK(pnf("!X g") == Formula::next(Formula::lit("g", false)));
  CHECK(pnf("!E g") == Formula::forall(Formula::lit("g", false)));
  CHECK(pnf("!(a && b)") == Formula::disj(Formula::lit("a", false), Formula::lit("b", false)));
}

TEST_CASE("to_pnf is idempotent and linear on ->-free input") {
  testing::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    auto f = testing::random_ltl(rng, {"a", "b"}, 12);
    auto p = to_pnf(f);
    CHECK(is_pnf(p));
    CHECK(to_pnf(p) == p);
  }
  // without <-> the result has at most one extra node per source node
  for (int i = 0; i < 500; ++i) {
    auto f = testing::random_ltl(rng, {"a", "b"}, 12, false);
    CHECK(ast_size(to_pnf(f)) <= 2 * ast_size(f));
  }
}

TEST_CASE("to_pnf preserves LTL semantics on lassos") {
  testing::Rng rng(11);
  const Alphabet ab({"a", "b"});
  for (int i = 0; i < 400; ++i) {
    auto f = testing::random_ltl(rng, {"a", "b"}, 9);
    auto w = testing::random_lasso(rng, 2, 3, 3);
    CHECK(eval_ltl_on_lasso(f, ab, w) == eval_ltl_on_lasso(to_pnf(f), ab, w));
  }
}

TEST_CASE("print/parse round trip") {
  testing::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    auto f = to_pnf(testing::random_ctlstar(rng, "r", "g", 4));
    Spec s{{"r"}, {"g"}, f};
    auto back = parse_spec(print_spec(s));
    CHECK(back.formula == s.formula);
    CHECK(back.inputs == s.inputs);
    CHECK(back.outputs == s.outputs);
  }
}

TEST_CASE("quantified_subformulas bottom-up order") {
  SUBCASE("three-conjunct example") {
    auto s = parse_spec("INPUTS r; OUTPUTS g; FORMULA E G !g && A G E F !g && E F g;");
    auto subs = quantified_subformulas(s);
    REQUIRE(subs.size() == 4);
    CHECK(subs[0].existential());
    CHECK(to_string(subs[0].node) == "E G !g");
    CHECK(subs[1].existential());
    CHECK(to_string(subs[1].node) == "E F !g");
    CHECK(!subs[2].existential());
    CHECK(to_string(subs[2].node) == "A G E F !g");
    CHECK(subs[3].existential());
    CHECK(to_string(subs[3].node) == "E F g");
  }
  SUBCASE("single universal") {
    auto subs = quantified_subformulas(parse_spec("INPUTS r; OUTPUTS g; FORMULA A G g;"));
    REQUIRE(subs.size() == 1);
    CHECK(to_string(subs[0].body) == "G g");
  }
  SUBCASE("nested existentials") {
    auto subs = quantified_subformulas(parse_spec("INPUTS r; OUTPUTS g; FORMULA E G E X (g && X (g && F !g));"));
    REQUIRE(subs.size() == 2);
    CHECK(to_string(subs[0].node) == "E X (g && X (g && F !g))");
    CHECK(to_string(subs[1].node) == "E G E X (g && X (g && F !g))");
  }
  SUBCASE("duplicates collapse") {
    auto subs = quantified_subformulas(parse_spec("INPUTS r; OUTPUTS g; FORMULA E F g && A G E F g;"));
    CHECK(subs.size() == 2);
  }
}

TEST_CASE("containment order holds on random formulas") {
  testing::Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    auto f = to_pnf(testing::random_ctlstar(rng, "r", "g", 4));
    auto subs = quantified_subformulas(f);
    for (std::size_t a = 0; a < subs.size(); ++a)
      for (std::size_t b = 0; b < a; ++b) {
        // an earlier entry never contains a later one
        CHECK(subs[b].body.key().find(subs[a].node.key()) == std::string::npos);
      }
  }
}

TEST_CASE("substitute") {
  SUBCASE("embedded existential becomes its atom") {
    auto body = pnf("G E X g");
    auto inner = pnf("E X g");
    SubstitutionTable t{{inner, Formula::witness("v", WitnessRel::NonZero)}};
    CHECK(to_string(substitute(body, t)) == "G [v!=0]");
  }
  SUBCASE("quantifier-free input is unchanged") {
    auto body = pnf("G (r -> F g)");
    CHECK(substitute(body, {}) == body);
  }
  SUBCASE("missing entry") {
    CHECK_THROWS_AS(substitute(pnf("F E X g"), {}), MissingSubstitution);
  }
  SUBCASE("random nested formulas lose every quantifier") {
    testing::Rng rng(9);
    for (int i = 0; i < 300; ++i) {
      auto f = to_pnf(testing::random_ctlstar(rng, "r", "g", 4));
      SubstitutionTable t;
      unsigned n = 0;
      for (const auto& q : quantified_subformulas(f)) t.emplace(q.node, Formula::lit("q" + std::to_string(n++)));
      CHECK(!has_quantifier(substitute(f, t)));
    }
  }
}

TEST_CASE("ast_size") {
  CHECK(ast_size(Formula::lit("g")) == 1);
  CHECK(ast_size(parse_spec("INPUTS; OUTPUTS g; FORMULA A G g;").formula) == 3);
  CHECK(ast_size(parse_spec("INPUTS r; OUTPUTS g; FORMULA E G !g && A G E F !g && E F g;").formula) == 13);
}

TEST_CASE("is_pure_ltl") {
  CHECK(is_pure_ltl(parse_spec("INPUTS r; OUTPUTS g; FORMULA A G (r -> F g);")));
  CHECK(!is_pure_ltl(parse_spec("INPUTS r; OUTPUTS g; FORMULA E G !g && A G E F !g && E F g;")));
  CHECK(!is_pure_ltl(parse_spec("INPUTS r; OUTPUTS g; FORMULA A G E F !g;")));
}

TEST_CASE("hash8 is stable") {
  CHECK(hash8(pnf("E F g")) == hash8(pnf("E F g")));
  CHECK(hash8(pnf("E F g")).size() == 8);
  CHECK(hash8(pnf("E F g")) != hash8(pnf("E F !g")));
}
