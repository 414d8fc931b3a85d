#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fintop/records.hpp"

namespace fintop::verify {

/// Fault-injection fixtures. Each replaces one primitive the suite depends on.
enum class Mutation {
  None,
  /// wo-iii answers the negation of its reference verdict.
  InvertedWoIII,
  /// Saturation adds only the fiber of the lowest point of the set.
  SaturationLowestFiber,
  /// The ratio union-find links roots with alpha*a/b instead of alpha*b/a.
  SwappedRatioLink,
};

std::string to_string(Mutation m);
/// "none", "wo-iii-inverted", "saturation-lowest-fiber", "ratio-link-swapped".
std::optional<Mutation> mutation_from_string(std::string_view name);

/// Hard bound on max_points for exhaustive map sweeps.
inline constexpr int kMaxSuitePoints = 4;
/// Hard bound on the coordinate count of the lattice families.
inline constexpr int kMaxLatticePoints = 4;

/// Every sublattice of R^n generated by at most three vectors with entries
/// in {-2..2}, listed directly: a zero set, a partition of the remaining
/// coordinates into tie groups, and ratios to each group's least coordinate
/// drawn from {1, 2} or from {1/2, 1}. The lattice chain properties range
/// over this family.
std::vector<ConstraintSystem> lattice_family(int n);

struct SuiteConfig {
  /// Exhaustive bound for topologies in map and relation sweeps.
  int max_points = 3;
  /// Coordinate bound for the lattice families; defaults to min(max_points, 4).
  std::optional<int> lattice_points;
  /// Seeded random instances drawn at sample_points points, per property.
  long long sample_budget = 0;
  int sample_points = 4;
  /// Property ids to run; empty means all.
  std::vector<std::string> properties;
  std::uint64_t seed = 1;
  /// 1 runs the serial reference loop; 0 uses the OpenMP default.
  int workers = 0;
  /// Wall-clock per property. Off by default so reports are byte-identical.
  bool timings = false;
  Mutation mutation = Mutation::None;
};

struct Witness {
  std::string family;
  long long index = 0;
  std::string detail;
  /// Records that replay the failure.
  std::string records;
};

struct FamilyTally {
  std::string name;
  long long checked = 0;
  long long passed = 0;
  long long failed = 0;
  long long not_applicable = 0;
};

struct PropertyReport {
  std::string id;
  std::string module;
  std::string statement;
  std::vector<FamilyTally> families;
  std::optional<Witness> witness;
  std::optional<double> seconds;

  long long checked() const;
  long long passed() const;
  long long failed() const;
  long long not_applicable() const;
};

struct SuiteReport {
  SuiteConfig config;
  std::vector<PropertyReport> properties;

  bool all_passed() const;
};

struct PropertyInfo {
  std::string id;
  std::string module;
  std::string statement;
};

/// Every property in report order.
const std::vector<PropertyInfo>& property_catalogue();

/// Throws ValidationError for unknown property ids and LimitError for
/// bounds above the hard limits.
SuiteReport run_suite(const SuiteConfig& config);

/// Re-evaluates a property on the instance described by witness records.
/// Returns the failure detail, or nullopt when the instance passes.
std::optional<std::string> replay(std::string_view property, const records::Document& doc,
                                  Mutation mutation = Mutation::None);

std::string to_text(const SuiteReport& report);
/// Stable field names; see docs/report-schema.md.
std::string to_json(const SuiteReport& report);

}  // namespace fintop::verify
