#pragma once

#include <optional>
#include <vector>

#include "fintop/contmap.hpp"
#include "fintop/finspace.hpp"

namespace fintop {

/// A partition of the points of a space. Blocks are kept sorted by least
/// element, so equal relations compare equal structurally.
class EquivRel {
public:
  EquivRel() = default;

  /// Blocks must be nonempty, disjoint and cover the points.
  static EquivRel from_blocks(FinSpace space, const std::vector<Subset>& blocks);
  /// labels[x] names the block of x; any integers.
  static EquivRel from_labels(FinSpace space, const std::vector<int>& labels);
  static EquivRel identity(FinSpace space);
  static EquivRel all_in_one(FinSpace space);

  const FinSpace& space() const { return space_; }
  const std::vector<Subset>& blocks() const { return blocks_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  /// Index of the block containing x.
  int block_of(int x) const { return block_of_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& labels() const { return block_of_; }

  /// Union of the blocks that meet a.
  Subset saturation(Subset a) const;
  /// Every block of `finer` lies inside a block of this relation.
  bool coarsens(const EquivRel& finer) const;

  bool operator==(const EquivRel& o) const { return space_ == o.space_ && blocks_ == o.blocks_; }

private:
  FinSpace space_;
  std::vector<Subset> blocks_;
  std::vector<int> block_of_;
};

/// Saturation of every closed set is closed. Checked on point closures, whose
/// unions are all the closed sets.
bool is_closed_relation(const EquivRel& rel);
/// The same property checked literally over every closed set (enumerable spaces).
bool is_closed_relation_literal(const EquivRel& rel);
/// The quotient projection is a closed map.
bool is_closed_relation_via_quotient(const EquivRel& rel);

struct Quotient {
  FinSpace space;
  /// Surjection onto the quotient; block i of the relation maps to point i.
  ContMap projection;
};

/// Quotient topology: a set of blocks is open when the union of its blocks is.
Quotient quotient(const EquivRel& rel);

/// Common refinement. Throws ValidationError on a space mismatch.
EquivRel meet(const EquivRel& a, const EquivRel& b);
/// Smallest equivalence relation containing both (transitive closure).
EquivRel join(const EquivRel& a, const EquivRel& b);

struct JoinResult {
  /// The least closed relation above both, when it exists.
  std::optional<EquivRel> join;
  /// Minimal closed relations above both (a single element when join is set).
  std::vector<EquivRel> minimal;
  /// Number of closed relations above both that were examined; 0 on the fast path.
  long long closed_candidates = 0;
};

/// Smallest closed relation containing a and b. When the transitive closure
/// is closed it is returned directly; otherwise all coarsenings are searched.
/// Throws LimitError when the search space exceeds `max_blocks` blocks.
JoinResult join_closed(const EquivRel& a, const EquivRel& b, int max_blocks = 10);
/// Always searches every partition of the points (at most `max_points` points).
JoinResult join_closed_exhaustive(const EquivRel& a, const EquivRel& b, int max_points = 10);

/// Every open nonempty U contains a nonempty A whose saturation is open.
bool eqq_condition_i(const EquivRel& rel);
/// Literal quantification over all open sets and subsets (enumerable spaces).
bool eqq_condition_i_literal(const EquivRel& rel);
/// Every closed A other than X has a saturation other than X.
bool eqq_condition_ii(const EquivRel& rel);
bool eqq_condition_ii_literal(const EquivRel& rel);

/// Calls fn(labels) for every restricted growth string of length n, i.e.
/// every partition of n points, in lexicographic order.
void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn);

}  // namespace fintop
