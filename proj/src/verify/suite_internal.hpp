#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fintop/contmap.hpp"
#include "fintop/funclat.hpp"
#include "fintop/verify.hpp"

namespace fintop::verify::detail {

enum class Result { Pass, Fail, NotApplicable };

struct Outcome {
  Result result = Result::Pass;
  std::string detail;
  std::string records;

  static Outcome pass() { return {}; }
  static Outcome not_applicable() { return {Result::NotApplicable, {}, {}}; }
  static Outcome fail(std::string detail) { return {Result::Fail, std::move(detail), {}}; }
};

using CanonicalFn = ConstraintSystem (*)(int, const std::vector<RationalVector>&);

/// A continuous map between two enumerated topologies, kept compact so the
/// exhaustive map family fits in memory at four points.
struct MapRef {
  std::uint8_t dom_n = 0;
  std::uint8_t cod_n = 0;
  std::uint16_t dom = 0;
  std::uint16_t cod = 0;
  std::array<std::uint8_t, kMaxSuitePoints> table{};
};

struct Context {
  SuiteConfig config;
  int lattice_points = 3;
  Kernels kernels;
  CanonicalFn canonical = &canonical_form;
  /// topologies[n] lists every topology on n points, n up to kMaxSuitePoints.
  std::vector<std::vector<FinSpace>> topologies;

  /// partitions[n] lists every partition of n points as labels.
  std::vector<std::vector<std::vector<int>>> partitions;

  explicit Context(const SuiteConfig& c);

  /// Every continuous map between topologies on 1..max_points points. Built
  /// on first use; call only from the serial setup phase.
  const std::vector<MapRef>& exhaustive_maps() const;
  ContMap materialise(const MapRef& m) const;

  /// Per-instance generator for sampled families.
  std::mt19937_64 rng(std::uint64_t salt, long long index) const;
  const FinSpace& random_topology(std::mt19937_64& g, int n) const;

private:
  mutable std::optional<std::vector<MapRef>> maps_;
};

struct Family {
  std::string name;
  long long count = 0;
  std::function<Outcome(long long)> check;
};

struct Property {
  PropertyInfo info;
  std::function<std::vector<Family>(const Context&)> families;
  std::function<Outcome(const records::Document&, const Context&)> replay;
};

/// Wraps an instance generator and a check into a family. Exceptions become
/// failures, and failures carry the instance's records.
template <class Gen, class Check, class Print>
Family make_family(std::string name, long long count, Gen gen, Check check, Print print) {
  return {std::move(name), count, [gen, check, print](long long i) {
            const auto instance = gen(i);
            Outcome o;
            try {
              o = check(instance);
            } catch (const std::exception& e) {
              o = Outcome::fail(std::string("exception: ") + e.what());
            }
            if (o.result == Result::Fail && o.records.empty()) o.records = print(instance);
            return o;
          }};
}

/// The record with this name; ParseError when absent.
const records::Record& named_record(const records::Document& doc, std::string_view name);

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t salt_of(std::string_view text);

void add_topology_properties(std::vector<Property>& out);
void add_lattice_properties(std::vector<Property>& out);

/// Random partition labels (restricted growth string) of n points.
std::vector<int> random_partition(std::mt19937_64& g, int n);

}  // namespace fintop::verify::detail
