#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "fintop/funclat.hpp"

namespace fintop::oracles {

/// Integer vectors for the exact oracles. Arithmetic is checked and throws
/// LimitError on overflow.
using IntVector = std::vector<std::int64_t>;

/// Reduced row echelon basis of the row space, each row primitive with a
/// positive pivot. Unique for a given subspace.
std::vector<IntVector> row_space(std::vector<IntVector> rows, int n);

/// The subspace of span(basis) where every coordinate in w vanishes.
std::vector<IntVector> vanishing_on(const std::vector<IntVector>& basis, int n, Subset w);

/// Lattice-linear closure computed without constraint reasoning: starting
/// from the span, repeatedly adds |f| for every sign pattern the subspace
/// realises (f ranging over the cell of that pattern) until the dimension
/// stops growing. Returns the canonical row basis of the closure.
std::vector<IntVector> lattice_closure(int n, const std::vector<IntVector>& generators);

/// Solution set of cs equals span(basis).
bool same_solution_set(const ConstraintSystem& cs, const std::vector<IntVector>& basis);

IntVector to_int_vector(const RationalVector& v);
RationalVector to_rational_vector(const IntVector& v);

/// Memoises lattice_closure on the canonical basis of the generators' span,
/// which determines the closure.
class LatticeClosureCache {
public:
  const std::vector<IntVector>& closure(int n, const std::vector<IntVector>& generators);
  std::size_t size() const { return cache_.size(); }

private:
  struct KeyHash {
    std::size_t operator()(const IntVector& k) const noexcept;
  };
  std::unordered_map<IntVector, std::vector<IntVector>, KeyHash> cache_;
};

/// Every topology on n points as its ascending open-set list, found by
/// testing every family of subsets for closure under union and
/// intersection. Lexicographic order. Intended for n <= 3.
std::vector<std::vector<Subset>> topologies_by_brute_force(int n);

/// Least closed equivalence relation via union-find over explicit merge
/// steps; returned as labels.
std::vector<int> union_find_labels(int n, const std::vector<std::pair<int, int>>& merges);

}  // namespace fintop::oracles
