#include <doctest.h>

#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"

using namespace fintop;

namespace {

FinSpace sierpinski() { return FinSpace::from_opens(2, {{}, {1}, {0, 1}}); }
FinSpace chain3() { return FinSpace::from_opens(3, {{}, {2}, {1, 2}, {0, 1, 2}}); }

std::vector<EquivRel> all_relations(const FinSpace& s) {
  std::vector<EquivRel> out;
  for_each_partition(s.size(), [&](const std::vector<int>& l) { out.push_back(EquivRel::from_labels(s, l)); });
  return out;
}

}  // namespace

TEST_CASE("partition enumeration follows the Bell numbers") {
  const long long bell[] = {1, 1, 2, 5, 15, 52, 203, 877, 4140, 21147, 115975};
  for (int n = 0; n <= 10; ++n) {
    long long count = 0;
    for_each_partition(n, [&](const std::vector<int>&) { ++count; });
    CHECK(count == bell[n]);
  }
}

TEST_CASE("relation construction") {
  const EquivRel r = EquivRel::from_blocks(chain3(), {{1}, {0, 2}});
  CHECK(r.blocks() == std::vector<Subset>{{0, 2}, {1}});
  CHECK(r.block_of(2) == 0);
  CHECK(r.saturation({2}) == Subset{0, 2});
  CHECK_THROWS_AS(EquivRel::from_blocks(chain3(), {{0, 1}}), ValidationError);
  CHECK_THROWS_AS(EquivRel::from_blocks(chain3(), {{0, 1}, {1, 2}}), ValidationError);
  CHECK_THROWS_AS(EquivRel::from_blocks(chain3(), {{0, 1, 2}, {}}), ValidationError);
}

TEST_CASE("is_closed_relation examples") {
  CHECK(is_closed_relation(EquivRel::all_in_one(chain3())));
  CHECK(is_closed_relation(EquivRel::identity(chain3())));
  const EquivRel r = EquivRel::from_blocks(chain3(), {{0, 2}, {1}});
  CHECK_FALSE(is_closed_relation(r));
  CHECK_FALSE(chain3().is_closed(r.saturation({0})));
}

TEST_CASE("quotient examples") {
  const Quotient all = quotient(EquivRel::all_in_one(chain3()));
  CHECK(all.space.size() == 1);
  const Quotient id = quotient(EquivRel::identity(chain3()));
  CHECK(id.space == chain3());
  CHECK(decide_by(id.projection, "inj") == Verdict::True);
  const Quotient s = quotient(EquivRel::all_in_one(sierpinski()));
  CHECK(s.space.size() == 1);
  CHECK(continuity_witness(s.projection.domain(), s.projection.codomain(), s.projection.table()) ==
        std::nullopt);
}

TEST_CASE("meet and join examples") {
  const FinSpace d4 = FinSpace::discrete(4);
  const EquivRel a = EquivRel::from_blocks(d4, {{0, 1}, {2, 3}});
  const EquivRel b = EquivRel::from_blocks(d4, {{0, 2}, {1, 3}});
  CHECK(meet(a, b) == EquivRel::identity(d4));
  CHECK(meet(a, EquivRel::identity(d4)) == EquivRel::identity(d4));
  CHECK(meet(a, EquivRel::all_in_one(d4)) == a);
  CHECK(join(a, b) == EquivRel::all_in_one(d4));
  CHECK_THROWS_AS(meet(a, EquivRel::identity(FinSpace::indiscrete(4))), ValidationError);
}

TEST_CASE("join_closed examples") {
  const EquivRel r = EquivRel::from_blocks(chain3(), {{0, 2}, {1}});
  const JoinResult j = join_closed(r, EquivRel::identity(chain3()));
  REQUIRE(j.join.has_value());
  // the only closed coarsening of {{0,2},{1}} is everything
  CHECK(*j.join == EquivRel::all_in_one(chain3()));
  const JoinResult e = join_closed_exhaustive(r, EquivRel::identity(chain3()));
  REQUIRE(e.join.has_value());
  CHECK(*e.join == *j.join);

  const EquivRel closed = EquivRel::from_blocks(chain3(), {{0, 1}, {2}});
  REQUIRE(is_closed_relation(closed));
  CHECK(*join_closed(closed, EquivRel::identity(chain3())).join == closed);

  // discrete spaces: transitive closure of the union
  const FinSpace d4 = FinSpace::discrete(4);
  const EquivRel a = EquivRel::from_blocks(d4, {{0, 1}, {2}, {3}});
  const EquivRel b = EquivRel::from_blocks(d4, {{1, 2}, {0}, {3}});
  CHECK(*join_closed(a, b).join == EquivRel::from_blocks(d4, {{0, 1, 2}, {3}}));
}

TEST_CASE("closedness procedures and joins agree on every relation up to 4 points") {
  for (int n = 1; n <= 4; ++n) {
    for (const FinSpace& s : enumerate_topologies(n)) {
      const auto rels = all_relations(s);
      for (const EquivRel& r : rels) {
        const bool c = is_closed_relation(r);
        REQUIRE(c == is_closed_relation_literal(r));
        REQUIRE(c == is_closed_relation_via_quotient(r));
        CHECK(eqq_condition_i(r) == eqq_condition_i_literal(r));
        CHECK(eqq_condition_ii(r) == eqq_condition_ii_literal(r));
        const Quotient q = quotient(r);
        CHECK(decide_by(q.projection, "quot-def") == Verdict::True);
        // literal quotient topology: a block set is open iff its preimage is
        for (Subset v : subsets_of(q.space.points())) {
          CHECK(q.space.is_open(v) == s.is_open(q.projection.preimage(v)));
        }
      }
      if (n <= 3) {
        for (const EquivRel& a : rels) {
          for (const EquivRel& b : rels) {
            const JoinResult fast = join_closed(a, b);
            const JoinResult slow = join_closed_exhaustive(a, b);
            CHECK(fast.minimal == slow.minimal);
          }
        }
      }
    }
  }
}

TEST_CASE("eqq conditions") {
  for (const EquivRel& r : all_relations(FinSpace::discrete(4))) CHECK(eqq_condition_i(r));
  CHECK(eqq_condition_i(EquivRel::all_in_one(sierpinski())));
  for (const FinSpace& s : enumerate_topologies(3)) {
    CHECK(eqq_condition_i(EquivRel::identity(s)));
    CHECK(eqq_condition_ii(EquivRel::identity(s)));
  }
  CHECK_FALSE(eqq_condition_ii(EquivRel::all_in_one(sierpinski())));
  CHECK_FALSE(eqq_condition_ii(EquivRel::from_blocks(chain3(), {{0, 2}, {1}})));
}
