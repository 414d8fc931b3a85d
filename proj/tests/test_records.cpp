#include <doctest.h>

#include "fintop/error.hpp"
#include "fintop/records.hpp"

using namespace fintop;

TEST_CASE("space record parses") {
  const records::Document doc = records::parse("space { n = 3; opens = [ [], [2], [1,2], [0,1,2] ] }");
  const FinSpace s = records::to_space(doc.last("space"), doc);
  CHECK(s == FinSpace::from_opens(3, {{}, {2}, {1, 2}, {0, 1, 2}}));
}

TEST_CASE("whitespace and comments are insignificant") {
  const records::Document a = records::parse("space{n=2;opens=[[],[1],[0,1]]}");
  const records::Document b = records::parse("# Sierpinski\nspace {\n  n = 2 ;\n  opens = [ [ ] , [1] , [0, 1] ] ;\n}\n");
  CHECK(records::to_space(a.last("space"), a) == records::to_space(b.last("space"), b));
}

TEST_CASE("map records resolve references and inline spaces") {
  const records::Document doc = records::parse(R"(
    space d2 { n = 2; opens = [[], [0], [1], [0,1]] }
    map phi { domain = d2; codomain = space { n = 2; opens = [[], [1], [0,1]] }; table = [0, 1] }
  )");
  const ContMap m = records::to_map(doc.last("map"), doc);
  CHECK(m.table() == std::vector<int>{0, 1});
  CHECK(m.domain().is_discrete());
}

TEST_CASE("round trips") {
  for (int n = 1; n <= 3; ++n) {
    for (const FinSpace& s : enumerate_topologies(n)) {
      const records::Document doc = records::parse(records::print(s));
      REQUIRE(records::to_space(doc.last("space"), doc) == s);
    }
  }
  const FinSpace big = FinSpace::discrete(20);
  const records::Document bd = records::parse(records::print(big, "big"));
  CHECK(records::to_space(bd.last("space"), bd) == big);

  const FinSpace chain = FinSpace::from_opens(3, {{}, {2}, {1, 2}, {0, 1, 2}});
  for (const ContMap& m : enumerate_continuous_maps(chain, chain)) {
    const records::Document doc = records::parse(records::print(m, "m"));
    REQUIRE(records::to_map(doc.last("map"), doc) == m);
  }

  const EquivRel r = EquivRel::from_blocks(chain, {{0, 2}, {1}});
  const records::Document rd = records::parse(records::print(r));
  CHECK(records::to_rel(rd.last("rel"), rd) == r);

  const ConstraintSystem cs = canonical_form(4, {{Rational(1), Rational(2), Rational(0), Rational(2, 3)}});
  const records::Document cd = records::parse(records::print(cs));
  CHECK(records::to_sublattice(cd.last("sublattice"), cd) == cs);

  const HomMatrix t({{Rational(0), Rational(2), Rational(0)}, {Rational(0), Rational(0), Rational(1, 2)}}, 3);
  const records::Document td = records::parse(records::print(t));
  CHECK(records::to_hom(td.last("hom"), td) == t);
  const HomMatrix empty({}, 2);
  const records::Document ed = records::parse(records::print(empty));
  CHECK(records::to_hom(ed.last("hom"), ed) == empty);
}

TEST_CASE("sublattice forms") {
  const records::Document doc = records::parse(R"(
    sublattice a { n = 3; zeros = [2]; ties = [ {x=1, z=0, ratio="2/1"} ] }
    sublattice b { n = 3; generators = [[1,2,0]] }
  )");
  CHECK(records::to_sublattice(*doc.named("a"), doc) == records::to_sublattice(*doc.named("b"), doc));
}

TEST_CASE("hom rows accept strings and integers") {
  const records::Document doc = records::parse(R"(hom { rows = [["0","2","0"],[0,0,1]] })");
  const HomMatrix t = records::to_hom(doc.last("hom"), doc);
  CHECK(t.rows() == 2);
  CHECK(t.cols() == 3);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(records::parse("space { n = 2; opens = [[], [1] "), ParseError);
  CHECK_THROWS_AS(records::parse("spaces { n = 2 }"), ParseError);
  CHECK_THROWS_AS(records::parse("space a { n = 1; opens = [[], [0]] } space a { n = 1; opens = [[], [0]] }"), ParseError);
  CHECK_THROWS_AS(records::parse("space { n = 2; n = 3 }"), ParseError);
  CHECK_THROWS_AS(records::parse("space { n = 2; opens = [\"x ] }"), ParseError);
  const records::Document d = records::parse("space { n = 2; opens = [[], [5], [0,1]] }");
  CHECK_THROWS_AS(records::to_space(d.last("space"), d), ParseError);
  const records::Document e = records::parse("space { n = 2; opens = [[], [0,1]]; colour = 3 }");
  CHECK_THROWS_AS(records::to_space(e.last("space"), e), ParseError);
  const records::Document f = records::parse("map { domain = nowhere; codomain = nowhere; table = [] }");
  CHECK_THROWS_AS(records::to_map(f.last("map"), f), ParseError);
  const records::Document g = records::parse("space { n = 2; opens = [[], [0]] }");
  CHECK_THROWS_AS(records::to_space(g.last("space"), g), ValidationError);
  try {
    records::parse("space {\n n = 2;\n opens = [[], [1],, [0,1]] }");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}
