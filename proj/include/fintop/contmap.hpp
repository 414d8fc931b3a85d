#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fintop/finspace.hpp"

namespace fintop {

/// A continuous map between finite spaces, stored as a total point table.
class ContMap {
public:
  ContMap() = default;

  const FinSpace& domain() const { return domain_; }
  const FinSpace& codomain() const { return codomain_; }
  const std::vector<int>& table() const { return table_; }
  int operator()(int x) const { return table_[static_cast<std::size_t>(x)]; }

  Subset image(Subset a) const;
  Subset image() const { return image(domain_.points()); }
  Subset preimage(Subset b) const;
  /// The fiber of x: all points with the same image.
  Subset fiber(int x) const { return preimage(Subset::singleton((*this)(x))); }

  bool operator==(const ContMap&) const = default;

private:
  friend ContMap make_map(FinSpace, FinSpace, std::vector<int>);
  friend ContMap make_map_unchecked(FinSpace, FinSpace, std::vector<int>);

  FinSpace domain_;
  FinSpace codomain_;
  std::vector<int> table_;
};

/// Validates totality, range and continuity. A discontinuous table is
/// rejected with a ValidationError naming an open set whose preimage is not open.
ContMap make_map(FinSpace domain, FinSpace codomain, std::vector<int> table);
/// For tables already known to be continuous (enumeration, quotients).
ContMap make_map_unchecked(FinSpace domain, FinSpace codomain, std::vector<int> table);

/// An open set of the codomain whose preimage is not open, if any.
std::optional<Subset> continuity_witness(const FinSpace& domain, const FinSpace& codomain,
                                         const std::vector<int>& table);

/// phi^-1(phi(a)): the smallest phi-saturated superset of a.
Subset saturation(const ContMap& map, Subset a);

/// Restriction to a nonempty subset of the domain, carried as a subspace.
ContMap restrict_to(const ContMap& map, Subset a);
/// The same map viewed as a surjection onto its image (with the subspace topology).
ContMap corestrict_to_image(const ContMap& map);

/// Every continuous table in lexicographic order. Throws LimitError when
/// |codomain|^|domain| exceeds `budget`.
std::vector<ContMap> enumerate_continuous_maps(const FinSpace& domain, const FinSpace& codomain,
                                               std::uint64_t budget = std::uint64_t{1} << 22);

// ---------------------------------------------------------------------------
// Map classes and their decision procedures.

enum class MapClass : std::uint8_t {
  WeaklyOpen,
  AlmostOpen,
  Skeletal,
  StronglySkeletal,
  Irreducible,
  WeaklyInjective,
  AlmostInjective,
  OpenMap,
  ClosedMap,
  Embedding,
  QuotientMap,
  Surjective,
  Injective,
};
inline constexpr std::size_t kMapClassCount = 13;

std::string_view to_string(MapClass c);
std::optional<MapClass> map_class_from_string(std::string_view name);

/// Third value for procedures whose hypothesis does not hold.
enum class Verdict : std::uint8_t { False, True, NotApplicable };

inline Verdict verdict(bool b) { return b ? Verdict::True : Verdict::False; }
std::string_view to_string(Verdict v);

enum class ProcedureKind : std::uint8_t {
  /// Equivalent to membership in the class (possibly under a hypothesis,
  /// returning NotApplicable when it fails).
  Characterisation,
  /// A claimed consequence: NotApplicable unless the hypothesis holds, then
  /// the truth of the conclusion, which is expected to be true.
  Consequence,
};

class Kernels;
using ProcedureFn = std::function<Verdict(const ContMap&, const Kernels&)>;

struct ProcedureInfo {
  std::string id;
  MapClass target;
  ProcedureKind kind;
  /// Quantifies over all open sets or subsets; needs enumerable spaces.
  bool enumerating;
  std::string statement;
  ProcedureFn fn;
};

/// All registered procedures in a fixed order.
const std::vector<ProcedureInfo>& procedure_registry();
const ProcedureInfo& find_procedure(std::string_view id);

/// Replaceable primitives, so test fixtures can inject faults. A
/// default-constructed Kernels is the reference implementation.
class Kernels {
public:
  using SaturationFn = Subset (*)(const ContMap&, Subset);

  SaturationFn saturation = &fintop::saturation;

  Kernels& override_procedure(std::string id, ProcedureFn fn);
  const ProcedureFn* override_for(std::string_view id) const;

private:
  std::vector<std::pair<std::string, ProcedureFn>> overrides_;
};

const Kernels& reference_kernels();

/// Evaluates a registered procedure. Throws ValidationError for unknown ids
/// or when the procedure belongs to a different class.
Verdict decide_by(const ContMap& map, MapClass target, std::string_view id,
                  const Kernels& kernels = reference_kernels());
Verdict decide_by(const ContMap& map, std::string_view id,
                  const Kernels& kernels = reference_kernels());

struct ClassFlag {
  bool value = false;
  std::string procedure;
};

struct MapClassification {
  std::array<ClassFlag, kMapClassCount> flags;

  const ClassFlag& operator[](MapClass c) const { return flags[static_cast<std::size_t>(c)]; }
  ClassFlag& operator[](MapClass c) { return flags[static_cast<std::size_t>(c)]; }
  bool is(MapClass c) const { return (*this)[c].value; }
};

/// Every flag by its designated procedure. Works for spaces of any size: the
/// designated procedures only visit minimal neighbourhoods and fibers.
MapClassification classify_map(const ContMap& map, const Kernels& kernels = reference_kernels());

/// Largest open phi-saturated subset of u.
Subset largest_open_saturated(const ContMap& map, Subset u, const Kernels& kernels);

}  // namespace fintop
