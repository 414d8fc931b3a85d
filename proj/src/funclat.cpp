#include "fintop/funclat.hpp"

#include <algorithm>

#include "fintop/error.hpp"

namespace fintop {

namespace {

std::size_t at(int x) { return static_cast<std::size_t>(x); }

void check_size(int n) {
  if (n < 0 || n > kSubsetCapacity) {
    throw LimitError("coordinate count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kSubsetCapacity));
  }
}

void check_vector(int n, const RationalVector& f) {
  if (static_cast<int>(f.size()) != n) {
    throw ValidationError("vector of length " + std::to_string(f.size()) + " in a lattice of dimension " +
                          std::to_string(n));
  }
}

}  // namespace

namespace detail {
void check_generators(int n, const std::vector<RationalVector>& generators) {
  check_size(n);
  for (const RationalVector& g : generators) check_vector(n, g);
}
}  // namespace detail

ConstraintSystem make_constraint_system(int n, Subset zeros, std::vector<int> rep, RationalVector ratio) {
  check_size(n);
  if (static_cast<int>(rep.size()) != n || static_cast<int>(ratio.size()) != n) {
    throw ValidationError("constraint data has the wrong length");
  }
  for (int x = 0; x < n; ++x) {
    const int r = rep[at(x)];
    if (zeros.contains(x)) {
      if (r != -1 || sgn(ratio[at(x)]) != 0) throw ValidationError("zero coordinate carries a tie");
      continue;
    }
    if (r < 0 || r > x || zeros.contains(r) || rep[at(r)] != r) {
      throw ValidationError("coordinate " + std::to_string(x) + " has no canonical representative");
    }
    if (sgn(ratio[at(x)]) <= 0 || (r == x && ratio[at(x)] != 1)) {
      throw ValidationError("coordinate " + std::to_string(x) + " has a non-canonical ratio");
    }
  }
  ConstraintSystem cs;
  cs.n_ = n;
  cs.zeros_ = zeros;
  cs.rep_ = std::move(rep);
  cs.ratio_ = std::move(ratio);
  return cs;
}

ConstraintSystem ConstraintSystem::full(int n) { return RatioUnionFind<>(n).extract(); }

ConstraintSystem ConstraintSystem::zero(int n) {
  RatioUnionFind<> uf(n);
  for (int x = 0; x < n; ++x) uf.make_zero(x);
  return uf.extract();
}

std::vector<int> ConstraintSystem::representatives() const {
  std::vector<int> out;
  for (int x = 0; x < n_; ++x) {
    if (rep_[at(x)] == x) out.push_back(x);
  }
  return out;
}

int ConstraintSystem::dimension() const { return static_cast<int>(representatives().size()); }

Subset ConstraintSystem::group(int r) const {
  Subset out;
  for (int x = 0; x < n_; ++x) {
    if (rep_[at(x)] == r) out.insert(x);
  }
  return out;
}

ConstraintSystem canonical_form(int n, const std::vector<RationalVector>& generators) {
  return canonical_form_with<ReferenceLink>(n, generators);
}

ConstraintSystem from_constraints(int n, Subset zeros, const std::vector<Tie>& ties) {
  check_size(n);
  if (!Subset::full(n).contains(zeros)) throw ValidationError("zero set out of range");
  RatioUnionFind<> uf(n);
  for (const Tie& t : ties) {
    if (t.x < 0 || t.x >= n || t.z < 0 || t.z >= n) {
      throw ValidationError("tie between coordinates " + std::to_string(t.x) + " and " +
                            std::to_string(t.z) + " out of range");
    }
    if (sgn(t.ratio) <= 0) {
      throw ValidationError("tie ratio " + to_string(t.ratio) + " is not positive");
    }
    uf.unite(t.x, t.z, t.ratio);
  }
  zeros.for_each([&](int x) { uf.make_zero(x); });
  return uf.extract();
}

std::vector<Tie> ties_of(const ConstraintSystem& cs) {
  std::vector<Tie> out;
  for (int x = 0; x < cs.size(); ++x) {
    if (cs.rep(x) >= 0 && cs.rep(x) != x) out.push_back({x, cs.rep(x), cs.ratio(x)});
  }
  return out;
}

bool member(const ConstraintSystem& cs, const RationalVector& f) {
  check_vector(cs.size(), f);
  for (int x = 0; x < cs.size(); ++x) {
    if (cs.zeros().contains(x)) {
      if (sgn(f[at(x)]) != 0) return false;
    } else if (f[at(x)] != cs.ratio(x) * f[at(cs.rep(x))]) {
      return false;
    }
  }
  return true;
}

std::vector<RationalVector> basis(const ConstraintSystem& cs) {
  std::vector<RationalVector> out;
  for (int r : cs.representatives()) {
    RationalVector v(at(cs.size()), Rational(0));
    for (int x = 0; x < cs.size(); ++x) {
      if (cs.rep(x) == r) v[at(x)] = cs.ratio(x);
    }
    out.push_back(std::move(v));
  }
  return out;
}

ConstraintSystem intersect(const ConstraintSystem& a, const ConstraintSystem& b) {
  if (a.size() != b.size()) throw ValidationError("intersecting lattices of different dimension");
  std::vector<Tie> ties = ties_of(a);
  for (Tie& t : ties_of(b)) ties.push_back(std::move(t));
  return from_constraints(a.size(), a.zeros() | b.zeros(), ties);
}

bool contains(const ConstraintSystem& outer, const ConstraintSystem& inner) {
  if (outer.size() != inner.size()) return false;
  for (const RationalVector& v : basis(inner)) {
    if (!member(outer, v)) return false;
  }
  return true;
}

ConstraintSystem zero_ideal(const ConstraintSystem& cs, Subset a) {
  if (!Subset::full(cs.size()).contains(a)) throw ValidationError("zero set out of range");
  return from_constraints(cs.size(), cs.zeros() | a, ties_of(cs));
}

Subset support(const std::vector<RationalVector>& g) {
  Subset out;
  for (const RationalVector& v : g) {
    for (std::size_t x = 0; x < v.size(); ++x) {
      if (sgn(v[x]) != 0) out.insert(static_cast<int>(x));
    }
  }
  return out;
}

ConstraintSystem disjoint_complement(const ConstraintSystem& cs, const std::vector<RationalVector>& g) {
  for (const RationalVector& v : g) {
    if (!member(cs, v)) throw ValidationError("vector is not a member of the lattice");
  }
  return zero_ideal(cs, support(g));
}

namespace {

// An atom of e expressed over the ambient groups: which groups it covers and
// its coefficient on each ambient atom.
struct AtomOverGroups {
  Subset groups;
  std::vector<Rational> weight;  // indexed by group index
};

}  // namespace

SublatticeFlags classify_sublattice(const ConstraintSystem& ambient, const ConstraintSystem& e) {
  if (!contains(ambient, e)) throw ValidationError("sublattice is not contained in the ambient lattice");
  const std::vector<int> reps = ambient.representatives();
  const int k = static_cast<int>(reps.size());
  if (k > kMaxUrysohnGroups) {
    throw LimitError("ambient lattice has " + std::to_string(k) + " groups; the limit is " +
                     std::to_string(kMaxUrysohnGroups));
  }
  const std::vector<RationalVector> f_atoms = basis(ambient);
  std::vector<AtomOverGroups> e_atoms;
  for (const RationalVector& a : basis(e)) {
    AtomOverGroups g;
    g.weight.assign(at(k), Rational(0));
    for (int j = 0; j < k; ++j) {
      // ambient atoms are 1 at their representative
      const Rational& w = a[at(reps[at(j)])];
      if (sgn(w) != 0) {
        g.groups.insert(j);
        g.weight[at(j)] = w;
      }
    }
    e_atoms.push_back(std::move(g));
  }

  SublatticeFlags flags;

  // 0 <= f <= e in E forces f into E: every ambient atom under an atom of E is in E.
  flags.ideal = true;
  for (const AtomOverGroups& a : e_atoms) {
    a.groups.for_each([&](int j) {
      if (!member(e, f_atoms[at(j)])) flags.ideal = false;
    });
  }

  const std::vector<RationalVector> e_basis = basis(e);
  const ConstraintSystem ed = disjoint_complement(ambient, e_basis);
  const ConstraintSystem edd = disjoint_complement(ambient, basis(ed));
  flags.band = edd == e;
  flags.projection_band = flags.band && e.dimension() + ed.dimension() == ambient.dimension();

  flags.order_dense = true;
  for (int j = 0; j < k && flags.order_dense; ++j) {
    bool under = false;
    for (const AtomOverGroups& a : e_atoms) under = under || a.groups == Subset::singleton(j);
    flags.order_dense = under;
  }

  flags.urysohn = true;
  flags.weakly_urysohn = true;
  flags.regular = true;
  const Subset all = Subset::full(k);
  for (Subset u : subsets_of(all)) {
    if (u.empty()) continue;
    // members vanishing outside u are spanned by the atoms inside u
    Subset covered;
    bool any = false;
    for (const AtomOverGroups& a : e_atoms) {
      if (u.contains(a.groups)) {
        covered |= a.groups;
        any = true;
      }
    }
    if (!any) flags.weakly_urysohn = false;
    if (covered != u) flags.urysohn = false;

    // inf_E { f in E : f >= 1_U }: empty unless the atoms cover u, otherwise
    // the coefficient-wise minimal element.
    Subset reach;
    for (const AtomOverGroups& a : e_atoms) reach |= a.groups;
    if (!reach.contains(u)) continue;
    bool nonzero = false;
    for (const AtomOverGroups& a : e_atoms) {
      Rational need(0);
      (a.groups & u).for_each([&](int j) {
        const Rational c = Rational(1) / a.weight[at(j)];
        if (c > need) need = c;
      });
      nonzero = nonzero || sgn(need) > 0;
    }
    if (!nonzero) flags.regular = false;
  }
  return flags;
}

bool infimum_is_zero(int n, const std::vector<RationalVector>& g) {
  for (const RationalVector& v : g) {
    check_vector(n, v);
    for (const Rational& q : v) {
      if (sgn(q) < 0) throw ValidationError("infimum test needs nonnegative vectors");
    }
  }
  if (g.empty()) return false;
  for (int x = 0; x < n; ++x) {
    Rational lo = g.front()[at(x)];
    for (const RationalVector& v : g) lo = std::min(lo, v[at(x)]);
    if (sgn(lo) != 0) return false;
  }
  return true;
}

bool infimum_is_zero_by_criterion(int n, const std::vector<RationalVector>& g) {
  for (const RationalVector& v : g) {
    check_vector(n, v);
    for (const Rational& q : v) {
      if (sgn(q) < 0) throw ValidationError("infimum test needs nonnegative vectors");
    }
  }
  if (n > kMaxUrysohnGroups) throw LimitError("open-set criterion limited to 16 coordinates");
  // Past k with 1/k below every positive entry, larger k change nothing.
  Rational smallest(1);
  for (const RationalVector& v : g) {
    for (const Rational& q : v) {
      if (sgn(q) > 0 && q < smallest) smallest = q;
    }
  }
  const Rational inv = Rational(1) / smallest;
  const mpz_class k_max = mpz_class(inv.get_num() / inv.get_den()) + 1;
  for (Subset u : subsets_of(Subset::full(n))) {
    if (u.empty()) continue;
    for (const mpz_class& k : {mpz_class(1), k_max}) {
      const Rational bound(mpz_class(1), k);
      bool found = false;
      for (const RationalVector& v : g) {
        u.for_each([&](int x) { found = found || v[at(x)] < bound; });
      }
      if (!found) return false;
    }
  }
  return true;
}

std::string describe(const ConstraintSystem& cs) {
  std::string out = "n=" + std::to_string(cs.size()) + " zeros=" + cs.zeros().to_string();
  for (const Tie& t : ties_of(cs)) {
    out += " f(" + std::to_string(t.x) + ")=" + to_string(t.ratio) + "*f(" + std::to_string(t.z) + ")";
  }
  return out;
}

}  // namespace fintop
