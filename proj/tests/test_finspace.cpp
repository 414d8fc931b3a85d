#include <doctest.h>

#include <set>

#include "fintop/error.hpp"
#include "fintop/finspace.hpp"

using namespace fintop;

namespace {

FinSpace sierpinski() { return FinSpace::from_opens(2, {{}, {1}, {0, 1}}); }
FinSpace chain3() { return FinSpace::from_opens(3, {{}, {2}, {1, 2}, {0, 1, 2}}); }

// Brute-force oracles straight from the open-set family.
Subset closure_oracle(const FinSpace& s, Subset a) {
  Subset out = s.points();
  for (Subset u : s.opens()) {
    const Subset c = u.complement(s.size());
    if (c.contains(a)) out &= c;
  }
  return out;
}

Subset interior_oracle(const FinSpace& s, Subset a) {
  Subset out;
  for (Subset u : s.opens()) {
    if (a.contains(u)) out |= u;
  }
  return out;
}

// Counts families over the 2^n - 2 nontrivial subsets closed under union and
// intersection. Independent of the library enumeration.
int count_topologies_oracle(int n) {
  const int total = 1 << n;
  const int m = total - 2;
  int count = 0;
  for (long f = 0; f < (1L << m); ++f) {
    auto in = [&](int s) { return s == 0 || s == total - 1 || ((f >> (s - 1)) & 1); };
    bool ok = true;
    for (int a = 1; a < total - 1 && ok; ++a) {
      if (!in(a)) continue;
      for (int b = 1; b < total - 1; ++b) {
        if (in(b) && (!in(a | b) || !in(a & b))) {
          ok = false;
          break;
        }
      }
    }
    count += ok ? 1 : 0;
  }
  return count;
}

bool somewhere_dense_in(const FinSpace& s, Subset b, Subset v) {
  // b is somewhere dense in the subspace v: closure in v has nonempty interior in v.
  const Subspace sub = subspace(s, v);
  const Subset local = sub.to_local(b);
  return !sub.space.interior(sub.space.closure(local)).empty();
}

}  // namespace

TEST_CASE("make_space validation") {
  CHECK(sierpinski().size() == 2);
  CHECK_THROWS_AS(FinSpace::from_opens(2, {{}, {0}, {1}}), ValidationError);
  CHECK_THROWS_AS(FinSpace::from_opens(2, {{0, 1}, {1}}), ValidationError);
  CHECK_THROWS_AS(FinSpace::from_opens(2, {{}, {0, 1}, {5}}), ValidationError);
  const FinSpace one = FinSpace::from_opens(1, {{}, {0}});
  CHECK(one.opens().size() == 2);
  // duplicates dropped, sorted
  const FinSpace dup = FinSpace::from_opens(2, {{0, 1}, {}, {1}, {1}});
  CHECK(dup.opens() == std::vector<Subset>{{}, {1}, {0, 1}});
  CHECK_THROWS_AS(FinSpace::from_neighborhoods({Subset{0, 1}, Subset{0}}), ValidationError);
}

TEST_CASE("closure and interior examples") {
  CHECK(sierpinski().closure({1}) == Subset{0, 1});
  CHECK(sierpinski().closure({}) == Subset{});
  CHECK(chain3().closure({2}) == Subset{0, 1, 2});
  CHECK(sierpinski().interior({0}) == Subset{});
  CHECK(chain3().interior({1, 2}) == Subset{1, 2});
  CHECK(chain3().interior(chain3().points()) == chain3().points());
}

TEST_CASE("classify_subset examples") {
  const auto p1 = classify_subset(sierpinski(), {1});
  CHECK(p1.dense);
  CHECK_FALSE(p1.nowhere_dense);
  CHECK_FALSE(p1.closed);
  CHECK(classify_subset(sierpinski(), {0}).nowhere_dense);
  const auto pe = classify_subset(chain3(), {});
  CHECK(pe.nowhere_dense);
  CHECK_FALSE(pe.dense);
}

TEST_CASE("subspace examples") {
  const Subspace a = subspace(sierpinski(), {0});
  CHECK(a.space.size() == 1);
  const Subspace b = subspace(chain3(), {0, 2});
  CHECK(b.to_parent == std::vector<int>{0, 2});
  CHECK(b.space.opens() == std::vector<Subset>{{}, {1}, {0, 1}});
  CHECK(subspace(chain3(), chain3().points()).space == chain3());
  CHECK_THROWS_AS(subspace(chain3(), {}), ValidationError);
}

TEST_CASE("closure and interior agree with brute force on every space with n <= 4") {
  for (int n = 1; n <= 4; ++n) {
    for (const FinSpace& s : enumerate_topologies(n)) {
      for (Subset a : subsets_of(s.points())) {
        const Subset cl = s.closure(a);
        REQUIRE(cl == closure_oracle(s, a));
        REQUIRE(s.interior(a) == interior_oracle(s, a));
        CHECK(s.interior(a) == s.closure(a.complement(n)).complement(n));
        CHECK(cl.contains(a));
        CHECK(s.closure(cl) == cl);
        for (Subset b : subsets_of(a)) CHECK(s.closure(b).contains(cl & s.closure(b)));
        bool meets_all = true;
        for (Subset u : s.opens()) {
          if (!u.empty() && !u.intersects(a)) meets_all = false;
        }
        const SubsetProps p = classify_subset(s, a);
        CHECK(p.dense == meets_all);
        CHECK(p.nowhere_dense == is_dense(s, cl.complement(n)));
        if (p.canonically_closed) CHECK(p.closed);
        if (p.clopen) CHECK(p.canonically_closed);
        if (p.clopen && !a.empty() && a != s.points()) {
          CHECK_FALSE(p.dense);
          CHECK_FALSE(p.nowhere_dense);
        }
      }
    }
  }
}

TEST_CASE("closure is monotone") {
  for (const FinSpace& s : enumerate_topologies(3)) {
    for (Subset a : subsets_of(s.points())) {
      for (Subset b : subsets_of(a)) CHECK(s.closure(a).contains(s.closure(b)));
    }
  }
}

TEST_CASE("canonically closed sets are those meeting every open set trivially or somewhere densely") {
  for (int n = 1; n <= 4; ++n) {
    for (const FinSpace& s : enumerate_topologies(n)) {
      for (Subset b : s.closed_sets()) {
        bool characterised = true;
        for (Subset v : s.opens()) {
          if (v.empty() || !(b & v).intersects(v)) continue;
          if (!somewhere_dense_in(s, b & v, v)) characterised = false;
        }
        CHECK(is_canonically_closed(s, b) == characterised);
      }
    }
  }
}

TEST_CASE("enumeration counts with two strategies") {
  const int expected[] = {0, 1, 4, 29, 355};
  for (int n = 1; n <= 4; ++n) {
    const auto pre = enumerate_topologies(n, EnumerationStrategy::Preorder);
    const auto fil = enumerate_topologies(n, EnumerationStrategy::FamilyFilter);
    CHECK(pre.size() == static_cast<std::size_t>(expected[n]));
    REQUIRE(pre.size() == fil.size());
    for (std::size_t i = 0; i < pre.size(); ++i) CHECK(pre[i].opens() == fil[i].opens());
    for (std::size_t i = 1; i < pre.size(); ++i) CHECK(topology_less(pre[i - 1], pre[i]));
  }
  for (int n = 1; n <= 3; ++n) CHECK(count_topologies_oracle(n) == expected[n]);
  CHECK(enumerate_topologies(5).size() == 6942);
}

TEST_CASE("T0 and homeomorphism class counts") {
  const int t0[] = {0, 1, 3, 19, 219};
  const int classes[] = {0, 1, 3, 9, 33};
  for (int n = 1; n <= 4; ++n) {
    int t0_count = 0;
    std::set<std::vector<Subset>> keys;
    for (const FinSpace& s : enumerate_topologies(n)) {
      t0_count += s.is_t0() ? 1 : 0;
      keys.insert(homeomorphism_key(s));
    }
    CHECK(t0_count == t0[n]);
    CHECK(keys.size() == static_cast<std::size_t>(classes[n]));
  }
}

TEST_CASE("enumeration limits") {
  CHECK_THROWS_AS(enumerate_topologies(6), LimitError);
  CHECK_THROWS_AS(enumerate_topologies(5, EnumerationStrategy::FamilyFilter), LimitError);
  CHECK_THROWS_AS(enumerate_topologies(0), ValidationError);
  EnumerationLimits tight;
  tight.max_points = 2;
  CHECK_THROWS_AS(enumerate_topologies(3, EnumerationStrategy::Preorder, tight), LimitError);
}

TEST_CASE("large spaces keep neighbourhoods but refuse open-set enumeration") {
  const FinSpace big = FinSpace::discrete(100);
  CHECK(big.closure({3, 99}) == Subset{3, 99});
  CHECK_FALSE(big.enumerable());
  CHECK_THROWS_AS(big.opens(), LimitError);
  CHECK_THROWS_AS(FinSpace::discrete(129), LimitError);
}
