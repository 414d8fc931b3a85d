#include <doctest.h>

#include "fintop/comphom.hpp"
#include "fintop/error.hpp"

using namespace fintop;

namespace {

std::vector<RationalVector> mat(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RationalVector> out;
  for (auto r : rows) {
    RationalVector v;
    for (long x : r) v.emplace_back(x);
    out.push_back(std::move(v));
  }
  return out;
}

FinSpace sierpinski() { return FinSpace::from_opens(2, {{}, {1}, {0, 1}}); }

// Every m x n matrix over {lo..hi}.
template <class Fn>
void for_each_matrix(int m, int n, int lo, int hi, Fn&& fn) {
  const int cells = m * n;
  std::vector<int> d(static_cast<std::size_t>(cells), lo);
  while (true) {
    std::vector<RationalVector> rows(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) rows[static_cast<std::size_t>(i)].emplace_back(d[static_cast<std::size_t>(i * n + j)]);
    }
    fn(rows);
    int k = 0;
    while (k < cells && d[static_cast<std::size_t>(k)] == hi) d[static_cast<std::size_t>(k++)] = lo;
    if (k == cells) return;
    ++d[static_cast<std::size_t>(k)];
  }
}

}  // namespace

TEST_CASE("is_homomorphism examples") {
  CHECK(is_homomorphism(mat({{0, 2, 0}, {0, 0, 1}}), 3));
  CHECK(is_homomorphism_by_absolute_values(mat({{0, 2, 0}, {0, 0, 1}}), 3));
  CHECK_FALSE(is_homomorphism(mat({{1, 1}, {0, 1}}), 2));
  CHECK_FALSE(is_homomorphism_by_absolute_values(mat({{1, 1}, {0, 1}}), 2));
  CHECK_FALSE(is_homomorphism(mat({{-1}}), 1));
  CHECK_FALSE(is_homomorphism_by_absolute_values(mat({{-1}}), 1));
  CHECK_THROWS_AS(is_homomorphism(mat({{1, 0}, {1}}), 2), ValidationError);
  CHECK_THROWS_AS(HomMatrix(mat({{1, 1}}), 2), ValidationError);
}

TEST_CASE("the (1,-1) witness for [[1,1],[0,1]]") {
  const std::vector<RationalVector> t = mat({{1, 1}, {0, 1}});
  const RationalVector f{Rational(1), Rational(-1)};
  const RationalVector abs_f{Rational(1), Rational(1)};
  RationalVector tf(2, Rational(0));
  RationalVector t_abs(2, Rational(0));
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      tf[static_cast<std::size_t>(i)] += t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(j)];
      t_abs[static_cast<std::size_t>(i)] += t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * abs_f[static_cast<std::size_t>(j)];
    }
  }
  CHECK(t_abs == RationalVector{Rational(2), Rational(1)});
  CHECK(abs(tf[0]) == 0);
  CHECK(abs(tf[1]) == 1);
}

TEST_CASE("structural and definitional tests agree on small matrices") {
  for (int m = 1; m <= 2; ++m) {
    for (int n = 1; n <= 3; ++n) {
      for_each_matrix(m, n, -2, 2, [&](const std::vector<RationalVector>& rows) {
        REQUIRE(is_homomorphism(rows, n) == is_homomorphism_by_absolute_values(rows, n));
      });
    }
  }
}

TEST_CASE("normal_form examples") {
  const NormalForm nf = normal_form(HomMatrix(mat({{0, 2, 0}, {0, 0, 1}}), 3));
  CHECK(nf.weights == RationalVector{Rational(2), Rational(1)});
  CHECK(nf.phi == std::vector<int>{1, 2});
  const NormalForm id = normal_form(HomMatrix(mat({{1, 0}, {0, 1}}), 2));
  CHECK(id.weights == RationalVector{Rational(1), Rational(1)});
  CHECK(id.phi == std::vector<int>{0, 1});
  const NormalForm z = normal_form(HomMatrix(mat({{0, 3}, {0, 0}}), 2));
  CHECK(z.weights[1] == 0);
  CHECK(z.phi[1] == -1);
}

TEST_CASE("normal_form round-trips and hoc conditions hold on homomorphisms") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 2; ++n) {
      for_each_matrix(m, n, 0, 2, [&](const std::vector<RationalVector>& rows) {
        if (!is_homomorphism(rows, n)) return;
        const HomMatrix t(rows, n);
        REQUIRE(reassemble(normal_form(t), n) == t);
        const HocReport r = hoc_conditions(t);
        CHECK(r.all());
      });
    }
  }
}

TEST_CASE("hoc examples") {
  const HomMatrix t(mat({{0, 2, 0}, {0, 0, 1}}), 3);
  CHECK(hoc_conditions(t).all());
  CHECK(hoc_conditions(HomMatrix(mat({{0, 0, 0}}), 3)).all());
  CHECK(hoc_conditions(HomMatrix(mat({{1, 0}, {0, 1}}), 2)).all());
}

TEST_CASE("kernel checks on the identity") {
  const HomMatrix id(mat({{1, 0}, {0, 1}}), 2);
  CHECK(hoc_kernel_band(id));
  CHECK(hoc_preimage_bands(id));
}

TEST_CASE("certify_composition examples") {
  const FinSpace d2 = FinSpace::discrete(2);
  const CertificateReport id = certify_composition(make_map(d2, d2, {0, 1}), ConstraintSystem::full(2));
  CHECK(id.discrete);
  CHECK(id.agrees());
  for (const Certificate& c : id.certificates) {
    CHECK(c.value);
    CHECK(c.direct);
  }

  const CertificateReport s = certify_composition(make_map(d2, sierpinski(), {0, 1}), ConstraintSystem::full(2));
  CHECK_FALSE(s.discrete);
  for (const Certificate& c : s.certificates) {
    CHECK_FALSE(c.direct_available);
    if (c.certificate == "skeletal" || c.certificate == "irreducible") CHECK_FALSE(c.value);
  }

  const FinSpace d3 = FinSpace::discrete(3);
  const CertificateReport inj = certify_composition(make_map(d2, d3, {2, 0}), ConstraintSystem::full(3));
  CHECK(inj.agrees());
  CHECK(inj.certificates[0].value);
  CHECK(inj.certificates[0].direct);

  const CertificateReport fold = certify_composition(make_map(d3, d2, {0, 0, 1}), ConstraintSystem::full(2));
  CHECK(fold.agrees());
  CHECK_FALSE(fold.certificates[0].value);

  const ConstraintSystem tie = from_constraints(2, {}, {{1, 0, Rational(1)}});
  CHECK_THROWS_AS(certify_composition(make_map(d2, d2, {0, 1}), tie), ValidationError);
}

TEST_CASE("discrete certificates agree with direct lattice verdicts") {
  for (int a = 1; a <= 3; ++a) {
    for (int b = 1; b <= 3; ++b) {
      for (const ContMap& m : enumerate_continuous_maps(FinSpace::discrete(a), FinSpace::discrete(b))) {
        REQUIRE(certify_composition(m, ConstraintSystem::full(b)).agrees());
      }
    }
  }
}
