#include <doctest.h>

#include "fintop/contmap.hpp"
#include "fintop/error.hpp"

using namespace fintop;

namespace {

FinSpace sierpinski() { return FinSpace::from_opens(2, {{}, {1}, {0, 1}}); }

// Definitions evaluated straight from the open-set lists.
Subset interior_from_opens(const FinSpace& s, Subset a) {
  Subset out;
  for (Subset u : s.opens()) {
    if (a.contains(u)) out |= u;
  }
  return out;
}
Subset closure_from_opens(const FinSpace& s, Subset a) {
  Subset out = s.points();
  for (Subset u : s.opens()) {
    if (!u.intersects(a)) out -= u;
  }
  return out;
}

bool weakly_open_oracle(const ContMap& m) {
  for (Subset u : m.domain().opens()) {
    if (!u.empty() && interior_from_opens(m.codomain(), m.image(u)).empty()) return false;
  }
  return true;
}
bool almost_open_oracle(const ContMap& m) {
  for (Subset u : m.domain().opens()) {
    if (u.empty()) continue;
    const Subset c = closure_from_opens(m.codomain(), m.image(u));
    if (interior_from_opens(m.codomain(), c).empty()) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("make_map") {
  const FinSpace s = sierpinski();
  CHECK_NOTHROW(make_map(s, s, {0, 1}));
  CHECK_NOTHROW(make_map(s, s, {1, 1}));
  try {
    make_map(s, s, {1, 0});
    FAIL("swap accepted");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()) == "map is not continuous: preimage of open [1] is [0], not open");
  }
  CHECK_THROWS_AS(make_map(s, s, {0}), ValidationError);
  CHECK_THROWS_AS(make_map(s, s, {0, 2}), ValidationError);
}

TEST_CASE("saturation") {
  const ContMap m = make_map(FinSpace::discrete(3), FinSpace::discrete(2), {0, 0, 1});
  CHECK(saturation(m, {0}) == Subset{0, 1});
  CHECK(saturation(m, {2}) == Subset{2});
  const ContMap c = make_map(sierpinski(), FinSpace::discrete(1), {0, 0});
  CHECK(saturation(c, {1}) == Subset{0, 1});
  const ContMap id = make_map(sierpinski(), sierpinski(), {0, 1});
  for (Subset a : subsets_of(id.domain().points())) CHECK(saturation(id, a) == a);
}

TEST_CASE("enumerate_continuous_maps") {
  const auto maps = enumerate_continuous_maps(sierpinski(), sierpinski());
  REQUIRE(maps.size() == 3);
  CHECK(maps[0].table() == std::vector<int>{0, 0});
  CHECK(maps[1].table() == std::vector<int>{0, 1});
  CHECK(maps[2].table() == std::vector<int>{1, 1});
  CHECK(enumerate_continuous_maps(FinSpace::from_opens(3, {{}, {2}, {1, 2}, {0, 1, 2}}),
                                  FinSpace::discrete(1)).size() == 1);
  CHECK(enumerate_continuous_maps(FinSpace::discrete(3), FinSpace::discrete(4)).size() == 64);
  CHECK_THROWS_AS(enumerate_continuous_maps(FinSpace::discrete(10), FinSpace::discrete(10), 1000),
                  LimitError);
  // brute force over all tables
  for (const FinSpace& x : enumerate_topologies(3)) {
    for (const FinSpace& y : enumerate_topologies(2)) {
      std::size_t count = 0;
      for (int t = 0; t < 8; ++t) {
        const std::vector<int> table{t & 1, (t >> 1) & 1, (t >> 2) & 1};
        count += continuity_witness(x, y, table) ? 0 : 1;
      }
      CHECK(enumerate_continuous_maps(x, y).size() == count);
    }
  }
}

TEST_CASE("classify_map examples") {
  const MapClassification id = classify_map(make_map(sierpinski(), sierpinski(), {0, 1}));
  for (std::size_t i = 0; i < kMapClassCount; ++i) CHECK(id.flags[i].value);

  const ContMap d2s = make_map(FinSpace::discrete(2), sierpinski(), {0, 1});
  const MapClassification c = classify_map(d2s);
  CHECK_FALSE(c.is(MapClass::WeaklyOpen));
  CHECK_FALSE(c.is(MapClass::AlmostOpen));
  CHECK_FALSE(c.is(MapClass::Skeletal));
  CHECK_FALSE(c.is(MapClass::Irreducible));
  CHECK(c.is(MapClass::WeaklyInjective));
  CHECK(c.is(MapClass::AlmostInjective));
  CHECK(c[MapClass::Skeletal].procedure == "skel-def");
  CHECK(weakly_open_oracle(d2s) == false);
  CHECK(almost_open_oracle(d2s) == false);

  const ContMap pt = make_map(FinSpace::discrete(1), FinSpace::indiscrete(2), {0});
  const MapClassification p = classify_map(pt);
  CHECK(p.is(MapClass::AlmostOpen));
  CHECK_FALSE(p.is(MapClass::WeaklyOpen));
}

TEST_CASE("decide_by examples") {
  const ContMap d2s = make_map(FinSpace::discrete(2), sierpinski(), {0, 1});
  CHECK(decide_by(d2s, MapClass::AlmostOpen, "wo-iii") == Verdict::False);
  const ContMap id = make_map(sierpinski(), sierpinski(), {0, 1});
  CHECK(decide_by(id, MapClass::Irreducible, "irr-ii") == Verdict::True);
  const ContMap c = make_map(sierpinski(), FinSpace::discrete(1), {0, 0});
  CHECK(decide_by(c, MapClass::Irreducible, "irr-i") == Verdict::False);
  CHECK_THROWS_AS(decide_by(c, MapClass::Irreducible, "irr-x"), ValidationError);
  CHECK_THROWS_AS(decide_by(c, MapClass::WeaklyOpen, "irr-i"), ValidationError);
  // d2s is not closed, so the closed-map characterisation does not apply.
  CHECK(decide_by(d2s, "mirr-i") == Verdict::NotApplicable);
  CHECK(decide_by(c, "mirr-i") == Verdict::False);
}

TEST_CASE("designated procedures agree with the definitions on all pairs up to 3 points") {
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (const FinSpace& x : enumerate_topologies(n)) {
        for (const FinSpace& y : enumerate_topologies(m)) {
          for (const ContMap& f : enumerate_continuous_maps(x, y)) {
            const MapClassification c = classify_map(f);
            REQUIRE(c.is(MapClass::WeaklyOpen) == weakly_open_oracle(f));
            REQUIRE(c.is(MapClass::AlmostOpen) == almost_open_oracle(f));
            REQUIRE(c.is(MapClass::WeaklyOpen) == (decide_by(f, "ao-i") == Verdict::True));
            REQUIRE(c.is(MapClass::Irreducible) == (decide_by(f, "irr-i") == Verdict::True));
            REQUIRE(c.is(MapClass::WeaklyInjective) == (decide_by(f, "wi-def") == Verdict::True));
            REQUIRE(c.is(MapClass::Irreducible) ==
                    (c.is(MapClass::StronglySkeletal) && c.is(MapClass::WeaklyInjective)));
            if (c.is(MapClass::Embedding)) REQUIRE(c.is(MapClass::Irreducible));
            if (c.is(MapClass::StronglySkeletal)) REQUIRE(c.is(MapClass::Skeletal));
          }
        }
      }
    }
  }
}

TEST_CASE("registry ids are unique and resolvable") {
  const auto& reg = procedure_registry();
  for (std::size_t i = 0; i < reg.size(); ++i) {
    CHECK(&find_procedure(reg[i].id) == &reg[i]);
  }
  for (const char* id : {"ao-i", "ao-ii-nonempty", "ao-ii-dense", "ao-iii", "wo-i", "wo-ii", "wo-iii",
                         "wo-iv", "wo-v", "wo-vi", "irr-i", "irr-ii", "irr-iii", "irr-iv", "mirr-i",
                         "mirr-ii", "mirr-iii", "wi-i", "wi-ii", "wi-iii"}) {
    CHECK_NOTHROW(find_procedure(id));
  }
  CHECK(map_class_from_string("skeletal") == MapClass::Skeletal);
  CHECK_FALSE(map_class_from_string("nope").has_value());
}

TEST_CASE("overrides replace a procedure") {
  Kernels k;
  k.override_procedure("wo-iii", [](const ContMap&, const Kernels&) { return Verdict::True; });
  const ContMap d2s = make_map(FinSpace::discrete(2), sierpinski(), {0, 1});
  CHECK(decide_by(d2s, "wo-iii", k) == Verdict::True);
  CHECK(decide_by(d2s, "wo-iii") == Verdict::False);
  CHECK_THROWS_AS(k.override_procedure("bogus", nullptr), ValidationError);
}

TEST_CASE("large spaces classify through the basis procedures") {
  const FinSpace big = FinSpace::discrete(40);
  std::vector<int> table(40);
  for (int i = 0; i < 40; ++i) table[static_cast<std::size_t>(i)] = i / 2;
  const ContMap m = make_map(big, FinSpace::discrete(20), table);
  const MapClassification c = classify_map(m);
  CHECK(c.is(MapClass::WeaklyOpen));
  CHECK(c.is(MapClass::QuotientMap));
  CHECK_FALSE(c.is(MapClass::WeaklyInjective));
  CHECK_THROWS_AS(decide_by(m, "wo-iii"), LimitError);
}
