#pragma once

#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/rational.hpp"
#include "fintop/subset.hpp"

namespace fintop {

/// A sublattice of the function lattice R^n (functions on n discrete points),
/// described by a zero set and positive ties f(x) = ratio(x) * f(rep(x)).
///
/// Canonical form: rep(x) is the least coordinate of x's tie group and
/// ratio(rep) = 1. Zero coordinates have rep = -1 and ratio 0. Two systems
/// with the same solution set compare equal.
class ConstraintSystem {
public:
  ConstraintSystem() = default;

  /// The whole of R^n.
  static ConstraintSystem full(int n);
  /// The zero sublattice.
  static ConstraintSystem zero(int n);

  int size() const { return n_; }
  Subset zeros() const { return zeros_; }
  int rep(int x) const { return rep_[static_cast<std::size_t>(x)]; }
  const Rational& ratio(int x) const { return ratio_[static_cast<std::size_t>(x)]; }

  /// Group representatives in ascending order; their count is the dimension.
  std::vector<int> representatives() const;
  int dimension() const;
  /// Coordinates tied to representative r (including r).
  Subset group(int r) const;

  bool operator==(const ConstraintSystem&) const = default;

private:
  template <class Link>
  friend class RatioUnionFind;
  friend ConstraintSystem make_constraint_system(int, Subset, std::vector<int>, RationalVector);

  int n_ = 0;
  Subset zeros_;
  std::vector<int> rep_;
  RationalVector ratio_;
};

/// Trusted constructor from canonical data; validates the canonical-form invariants.
ConstraintSystem make_constraint_system(int n, Subset zeros, std::vector<int> rep, RationalVector ratio);

struct Tie {
  int x = 0;
  int z = 0;
  /// f(x) = ratio * f(z); must be positive.
  Rational ratio;
};

/// Correct link rule: joining roots rx, rz where f(x) = a f(rx), f(z) = b f(rz)
/// and f(x) = alpha f(z) gives f(rx) = (alpha b / a) f(rz).
struct ReferenceLink {
  static Rational link(const Rational& alpha, const Rational& a, const Rational& b) {
    return alpha * b / a;
  }
};

/// Union-find over coordinates with multiplicative edge weights:
/// weight(x) relates x to its parent by f(x) = weight(x) * f(parent(x)).
/// A contradictory cycle (f(x) = c f(x), c != 1) forces the group to zero.
template <class Link = ReferenceLink>
class RatioUnionFind {
public:
  explicit RatioUnionFind(int n)
      : parent_(static_cast<std::size_t>(n)), weight_(static_cast<std::size_t>(n), Rational(1)),
        zero_(static_cast<std::size_t>(n), false) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  /// The root of x. Compresses the path, after which weight(x) relates x
  /// to the root (a root's weight is 1).
  int find_root(int x) {
    path_.clear();
    while (parent_[idx(x)] != x) {
      path_.push_back(x);
      x = parent_[idx(x)];
    }
    const int root = x;
    // Rewrite every node on the path to point at the root.
    for (auto it = path_.rbegin(); it != path_.rend(); ++it) {
      const int p = parent_[idx(*it)];
      if (p != root) weight_[idx(*it)] *= weight_[idx(p)];
      parent_[idx(*it)] = root;
    }
    return root;
  }
  const Rational& weight(int x) const { return weight_[idx(x)]; }
  /// (root, r) with f(x) = r * f(root).
  std::pair<int, Rational> find(int x) {
    const int root = find_root(x);
    return {root, weight_[idx(x)]};
  }
  /// Records f(x) = alpha * f(z).
  void unite(int x, int z, const Rational& alpha) {
    const int rx = find_root(x);
    const int rz = find_root(z);
    // Compressing z's path leaves x attached to its root, so weight(x) is current.
    if (rx == rz) {
      if (weight_[idx(x)] != alpha * weight_[idx(z)]) zero_[idx(rx)] = true;
      return;
    }
    const Rational linked = Link::link(alpha, weight_[idx(x)], weight_[idx(z)]);
    parent_[idx(rx)] = rz;
    weight_[idx(rx)] = linked;
    if (zero_[idx(rx)]) zero_[idx(rz)] = true;
  }
  void make_zero(int x) { zero_[idx(find_root(x))] = true; }

  ConstraintSystem extract() {
    const int n = static_cast<int>(parent_.size());
    ConstraintSystem cs;
    cs.n_ = n;
    cs.rep_.assign(static_cast<std::size_t>(n), -1);
    cs.ratio_.assign(static_cast<std::size_t>(n), Rational(0));
    std::vector<int> least(static_cast<std::size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
      const int root = find_root(x);
      if (zero_[idx(root)]) {
        cs.zeros_.insert(x);
        continue;
      }
      if (least[idx(root)] < 0) least[idx(root)] = x;
      const int rep = least[idx(root)];
      cs.rep_[idx(x)] = rep;
      // Every visited node hangs directly off its root, so weights stay current.
      const Rational& base = weight_[idx(rep)];
      if (base == 1) {
        cs.ratio_[idx(x)] = weight_[idx(x)];
      } else {
        cs.ratio_[idx(x)] = weight_[idx(x)] / base;
      }
    }
    return cs;
  }

private:
  static std::size_t idx(int x) { return static_cast<std::size_t>(x); }

  std::vector<int> parent_;
  RationalVector weight_;
  std::vector<bool> zero_;
  std::vector<int> path_;
};

/// The sublattice generated by `generators` (linear span closed under the
/// pointwise lattice operations), as a constraint system. Coordinate x is
/// zero iff every generator vanishes there; nonzero coordinates are tied
/// when their generator columns are positively proportional.
template <class Link = ReferenceLink>
ConstraintSystem canonical_form_with(int n, const std::vector<RationalVector>& generators);

ConstraintSystem canonical_form(int n, const std::vector<RationalVector>& generators);

/// Solution set of zero constraints and positive ties. Throws
/// ValidationError on non-positive ratios or out-of-range coordinates.
ConstraintSystem from_constraints(int n, Subset zeros, const std::vector<Tie>& ties);

/// The ties of a canonical system, one per non-representative coordinate.
std::vector<Tie> ties_of(const ConstraintSystem& cs);

bool member(const ConstraintSystem& cs, const RationalVector& f);

/// The atoms: one positive vector per tie group, disjointly supported.
/// They form a basis of the solution set.
std::vector<RationalVector> basis(const ConstraintSystem& cs);

ConstraintSystem intersect(const ConstraintSystem& a, const ConstraintSystem& b);
/// Solution set of `inner` is a subset of that of `outer`.
bool contains(const ConstraintSystem& outer, const ConstraintSystem& inner);

/// E_A: members that vanish on a.
ConstraintSystem zero_ideal(const ConstraintSystem& cs, Subset a);

/// Union of the supports of the given vectors.
Subset support(const std::vector<RationalVector>& g);

/// G^d inside the solution set: E_S with S the union of the supports of G.
/// Throws ValidationError when a vector of G is not a member.
ConstraintSystem disjoint_complement(const ConstraintSystem& cs, const std::vector<RationalVector>& g);

struct SublatticeFlags {
  bool ideal = false;
  bool band = false;
  bool projection_band = false;
  bool order_dense = false;
  bool urysohn = false;
  bool weakly_urysohn = false;
  bool regular = false;

  bool operator==(const SublatticeFlags&) const = default;
};

/// Largest number of ambient tie groups for which the Urysohn quantifiers
/// over subsets are evaluated.
inline constexpr int kMaxUrysohnGroups = 16;

/// Flags of e relative to the ambient lattice. The ambient is treated as the
/// function lattice on its tie groups (a discrete space). Throws
/// ValidationError when e is not inside the ambient, LimitError when the
/// ambient has more than kMaxUrysohnGroups groups.
SublatticeFlags classify_sublattice(const ConstraintSystem& ambient, const ConstraintSystem& e);

/// Coordinatewise infimum of a finite nonnegative family is zero everywhere.
/// Throws ValidationError on negative entries or ragged input.
bool infimum_is_zero(int n, const std::vector<RationalVector>& g);
/// The same, decided by the open-set criterion: for every nonempty U and
/// every k some member is below 1/k at some point of U.
bool infimum_is_zero_by_criterion(int n, const std::vector<RationalVector>& g);

/// "f(1)=2*f(0); zero {2}" style summary.
std::string describe(const ConstraintSystem& cs);

// ---------------------------------------------------------------------------

namespace detail {
void check_generators(int n, const std::vector<RationalVector>& generators);
}

template <class Link>
ConstraintSystem canonical_form_with(int n, const std::vector<RationalVector>& generators) {
  detail::check_generators(n, generators);
  const auto at = [](int i) { return static_cast<std::size_t>(i); };
  std::vector<int> pivot_row(at(n), -1);
  for (int z = 0; z < n; ++z) {
    for (std::size_t i = 0; i < generators.size() && pivot_row[at(z)] < 0; ++i) {
      if (sgn(generators[i][at(z)]) != 0) pivot_row[at(z)] = static_cast<int>(i);
    }
  }
  // alpha > 0 with column z = alpha * column x, if any. Proportional
  // nonzero columns have their first nonzero entry in the same row.
  Rational alpha;
  Rational scaled;
  auto proportional = [&](int z, int x) {
    const std::size_t p = at(pivot_row[at(z)]);
    if (pivot_row[at(x)] != pivot_row[at(z)]) return false;
    if (sgn(generators[p][at(z)]) != sgn(generators[p][at(x)])) return false;
    alpha = generators[p][at(z)] / generators[p][at(x)];
    for (std::size_t i = p + 1; i < generators.size(); ++i) {
      scaled = alpha * generators[i][at(x)];
      if (generators[i][at(z)] != scaled) return false;
    }
    return true;
  };
  RatioUnionFind<Link> uf(n);
  for (int z = 0; z < n; ++z) {
    if (pivot_row[at(z)] < 0) {
      uf.make_zero(z);
      continue;
    }
    // Tie to the nearest proportional predecessor; groups chain through it.
    for (int x = z - 1; x >= 0; --x) {
      if (pivot_row[at(x)] >= 0 && proportional(z, x)) {
        uf.unite(z, x, alpha);
        break;
      }
    }
  }
  return uf.extract();
}

}  // namespace fintop
