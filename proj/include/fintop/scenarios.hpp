#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fintop/contmap.hpp"

namespace fintop::scenarios {

// ---------------------------------------------------------------------------
// Cantor-space joins at finite depth.
//
// A modeled point is (w, t): a finite word w followed by the constant tail
// t = 0 or 1, with w empty or ending in the digit opposite to t. The
// universe at depth L holds every such point with |w| <= L - 1.

inline constexpr int kMaxInteroDepth = 16;

struct CantorPoint {
  std::string word;
  int tail = 0;

  /// "01(1)" for 0111..., "(0)" for the zero sequence.
  std::string to_string() const;
  auto operator<=>(const CantorPoint&) const = default;
};

struct InteroReport {
  int depth = 0;
  long long points = 0;
  /// Edges of the binary-value relation and its two coordinate-swap conjugates
  /// that stay inside the universe, and those dropped for leaving it.
  long long sim_edges = 0;
  long long psi_edges = 0;
  long long theta_edges = 0;
  long long dropped_edges = 0;
  long long classes = 0;
  /// Points of depth <= L - 2; the claim is only made for them.
  int checked_depth = 0;
  long long checked_points = 0;
  long long checked_classes = 0;
  /// False for L = 2, where no nonconstant point is checked.
  bool claim_applies = false;
  /// Every nonconstant checked point is joined with (1, 0).
  bool single_class = false;
  /// The two constant sequences are joined with nothing.
  bool constants_isolated = false;
  /// The same claim from the explicit merge sequence of the induction.
  bool oracle_single_class = false;
  /// Every merge of that sequence is also made by the join.
  bool oracle_refines_join = false;
  /// Checked points joined with (1, 0).
  std::set<CantorPoint> collapsed;

  bool passed() const;
};

/// Throws LimitError unless 2 <= depth <= kMaxInteroDepth.
InteroReport intero_scenario(int depth);
std::string to_text(const InteroReport& r);
std::string to_json(const InteroReport& r);

// ---------------------------------------------------------------------------
// Face-poset model of the square with an attached diagonal segment.
//
// Faces of the k x k grid on [0,k]^2, with every diagonal square split into
// two triangles along the diagonal, plus a segment of k edges hanging off
// the corner (0,0). Opens are up-sets of the face order, so the minimal
// open set of a face is its coface star.

inline constexpr int kMaxGridSize = 4;

struct GridQuotient {
  std::string name;
  int blocks = 0;
  bool closed_relation = false;
  bool skeletal = false;
  bool almost_open = false;
  std::string skeletal_procedure;
  /// Expected skeletal verdict, when asserted.
  std::optional<bool> expected_skeletal;

  bool passed() const { return !expected_skeletal || *expected_skeletal == skeletal; }
};

struct GridModel {
  int k = 0;
  FinSpace space;
  std::vector<std::string> names;
};

struct GridReport {
  int k = 0;
  int points = 0;
  std::vector<GridQuotient> quotients;

  bool asserted() const;
  bool passed() const;
};

/// Throws LimitError unless 1 <= k <= kMaxGridSize.
GridModel grid_model(int k);
GridReport grid_scenario(int k);
std::string to_text(const GridReport& r);
std::string to_json(const GridReport& r);

}  // namespace fintop::scenarios
