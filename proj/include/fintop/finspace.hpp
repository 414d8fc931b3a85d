#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "fintop/subset.hpp"

namespace fintop {

/// Spaces above this size have no explicit open-set family; procedures that
/// quantify over all open sets or all subsets refuse them with LimitError.
inline constexpr int kMaxEnumerablePoints = 16;

/// A finite topological space on points {0..n-1}.
///
/// Internally the topology is held as the minimal open neighbourhood of every
/// point (finite topologies are exactly the Alexandrov topologies of a
/// preorder). For spaces with at most kMaxEnumerablePoints points the full
/// family of open sets is also materialised, sorted by mask value.
class FinSpace {
public:
  FinSpace() = default;

  /// Validates that `opens` contains the empty and full set and is closed
  /// under pairwise union and intersection. Duplicates are dropped.
  static FinSpace from_opens(int n, std::vector<Subset> opens);

  /// `neighborhoods[x]` must contain x and be up-closed: y in N(x) implies
  /// N(y) is a subset of N(x).
  static FinSpace from_neighborhoods(std::vector<Subset> neighborhoods);

  /// Coarsest topology in which every member of `subbasis` is open.
  static FinSpace generated_by(int n, const std::vector<Subset>& subbasis);

  static FinSpace discrete(int n);
  static FinSpace indiscrete(int n);

  int size() const { return n_; }
  Subset points() const { return Subset::full(n_); }
  Subset neighborhood(int x) const { return nbhd_[static_cast<std::size_t>(x)]; }
  const std::vector<Subset>& neighborhoods() const { return nbhd_; }

  bool enumerable() const { return n_ <= kMaxEnumerablePoints; }
  /// All open sets in ascending mask order. Throws LimitError for large spaces.
  const std::vector<Subset>& opens() const;
  /// All closed sets in ascending mask order. Throws LimitError for large spaces.
  std::vector<Subset> closed_sets() const;

  bool is_open(Subset a) const { return interior(a) == a; }
  bool is_closed(Subset a) const { return closure(a) == a; }
  bool is_discrete() const;
  bool is_t0() const;

  Subset closure(Subset a) const;
  Subset interior(Subset a) const;

  bool operator==(const FinSpace& other) const { return n_ == other.n_ && nbhd_ == other.nbhd_; }

private:
  void materialise_opens();

  int n_ = 0;
  std::vector<Subset> nbhd_;
  std::vector<Subset> opens_;
};

struct SubsetProps {
  bool closed = false;
  bool dense = false;
  bool nowhere_dense = false;
  bool canonically_closed = false;
  bool canonically_open = false;
  bool clopen = false;

  bool operator==(const SubsetProps&) const = default;
};

SubsetProps classify_subset(const FinSpace& space, Subset a);

bool is_dense(const FinSpace& space, Subset a);
bool is_nowhere_dense(const FinSpace& space, Subset a);
bool is_canonically_closed(const FinSpace& space, Subset a);

/// A subspace with its points re-indexed 0..k-1 in ascending order of the
/// parent indices.
struct Subspace {
  FinSpace space;
  std::vector<int> to_parent;

  /// Maps a subset of the parent (restricted to the subspace) to local indices.
  Subset to_local(Subset parent_subset) const;
  Subset to_parent_subset(Subset local) const;
};

/// Throws ValidationError when `a` is empty.
Subspace subspace(const FinSpace& space, Subset a);

// ---------------------------------------------------------------------------
// Enumeration of all topologies on n labelled points.

enum class EnumerationStrategy {
  /// Filter every family of subsets for closure under union and intersection.
  FamilyFilter,
  /// Enumerate preorders (specialisation orders) and take their up-set topologies.
  Preorder,
};

struct EnumerationLimits {
  int max_points = 5;
  /// The family filter visits 2^(2^n - 2) candidates.
  int max_filter_points = 4;
};

/// Every topology on n points exactly once, ordered lexicographically by the
/// ascending list of open-set masks. Throws LimitError above the limits.
std::vector<FinSpace> enumerate_topologies(int n,
                                           EnumerationStrategy strategy = EnumerationStrategy::Preorder,
                                           const EnumerationLimits& limits = {});

/// Streaming form; stops early when fn returns false.
void for_each_topology(int n, const std::function<bool(const FinSpace&)>& fn,
                       EnumerationStrategy strategy = EnumerationStrategy::Preorder,
                       const EnumerationLimits& limits = {});

/// Lexicographic comparison of open-set lists, the enumeration order.
bool topology_less(const FinSpace& a, const FinSpace& b);

/// Canonical representative of the homeomorphism class (minimum open-set list
/// over all point relabellings). Reporting only; n must be small.
std::vector<Subset> homeomorphism_key(const FinSpace& space);

}  // namespace fintop
