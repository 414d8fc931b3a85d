#include <algorithm>
#include <chrono>
#include <sstream>

#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"
#include "fintop/verify.hpp"
#include "json.hpp"
#include "suite_internal.hpp"

#ifdef FINTOP_HAVE_OPENMP
#include <omp.h>
#endif

namespace fintop::verify {

namespace detail {

namespace {

std::size_t at(long long i) { return static_cast<std::size_t>(i); }

// ---------------------------------------------------------------------------
// Mutation fixtures.

Subset saturation_lowest_fiber(const ContMap& m, Subset a) {
  if (a.empty()) return a;
  return a | m.fiber(a.lowest());
}

struct SwappedLink {
  static Rational link(const Rational& alpha, const Rational& a, const Rational& b) { return alpha * a / b; }
};

ConstraintSystem canonical_swapped(int n, const std::vector<RationalVector>& g) {
  return canonical_form_with<SwappedLink>(n, g);
}

Verdict inverted_wo_iii(const ContMap& m, const Kernels& k) {
  switch (find_procedure("wo-iii").fn(m, k)) {
    case Verdict::True:
      return Verdict::False;
    case Verdict::False:
      return Verdict::True;
    case Verdict::NotApplicable:
      break;
  }
  return Verdict::NotApplicable;
}

bool table_continuous(const FinSpace& dom, const FinSpace& cod, const std::array<std::uint8_t, kMaxSuitePoints>& t) {
  for (int x = 0; x < dom.size(); ++x) {
    const Subset target = cod.neighborhood(t[at(x)]);
    bool ok = true;
    dom.neighborhood(x).for_each([&](int y) { ok = ok && target.contains(static_cast<int>(t[at(y)])); });
    if (!ok) return false;
  }
  return true;
}

}  // namespace

Context::Context(const SuiteConfig& c) : config(c) {
  lattice_points = config.lattice_points.value_or(std::min(config.max_points, kMaxLatticePoints));
  switch (config.mutation) {
    case Mutation::None:
      break;
    case Mutation::InvertedWoIII:
      kernels.override_procedure("wo-iii", inverted_wo_iii);
      break;
    case Mutation::SaturationLowestFiber:
      kernels.saturation = &saturation_lowest_fiber;
      break;
    case Mutation::SwappedRatioLink:
      canonical = &canonical_swapped;
      break;
  }
  topologies.resize(kMaxSuitePoints + 1);
  partitions.resize(kMaxSuitePoints + 1);
  for (int n = 1; n <= kMaxSuitePoints; ++n) {
    topologies[at(n)] = enumerate_topologies(n);
    for_each_partition(n, [&](const std::vector<int>& labels) { partitions[at(n)].push_back(labels); });
  }
}

const std::vector<MapRef>& Context::exhaustive_maps() const {
  if (maps_) return *maps_;
  std::vector<MapRef> out;
  for (int dn = 1; dn <= config.max_points; ++dn) {
    for (int cn = 1; cn <= config.max_points; ++cn) {
      long long tables = 1;
      for (int i = 0; i < dn; ++i) tables *= cn;
      for (std::size_t d = 0; d < topologies[at(dn)].size(); ++d) {
        for (std::size_t c = 0; c < topologies[at(cn)].size(); ++c) {
          // Lexicographic in the table, first entry most significant.
          for (long long code = 0; code < tables; ++code) {
            MapRef m{static_cast<std::uint8_t>(dn), static_cast<std::uint8_t>(cn), static_cast<std::uint16_t>(d),
                     static_cast<std::uint16_t>(c), {}};
            long long rest = code;
            for (int x = dn - 1; x >= 0; --x) {
              m.table[at(x)] = static_cast<std::uint8_t>(rest % cn);
              rest /= cn;
            }
            if (table_continuous(topologies[at(dn)][d], topologies[at(cn)][c], m.table)) out.push_back(m);
          }
        }
      }
    }
  }
  maps_ = std::move(out);
  return *maps_;
}

ContMap Context::materialise(const MapRef& m) const {
  std::vector<int> table(m.table.begin(), m.table.begin() + m.dom_n);
  return make_map_unchecked(topologies[m.dom_n][m.dom], topologies[m.cod_n][m.cod], std::move(table));
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t salt_of(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (char c : text) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
  return h;
}

std::mt19937_64 Context::rng(std::uint64_t salt, long long index) const {
  return std::mt19937_64(splitmix64(splitmix64(config.seed ^ salt) + static_cast<std::uint64_t>(index)));
}

const FinSpace& Context::random_topology(std::mt19937_64& g, int n) const {
  const auto& list = topologies[at(n)];
  return list[at(static_cast<long long>(g() % list.size()))];
}

std::vector<int> random_partition(std::mt19937_64& g, int n) {
  std::vector<int> labels;
  int blocks = 0;
  for (int i = 0; i < n; ++i) {
    const int l = static_cast<int>(g() % static_cast<std::uint64_t>(blocks + 1));
    labels.push_back(l);
    if (l == blocks) ++blocks;
  }
  return labels;
}

const records::Record& named_record(const records::Document& doc, std::string_view name) {
  const records::Record* r = doc.named(name);
  if (r == nullptr) throw ParseError("no record named '" + std::string(name) + "'");
  return *r;
}

namespace {

const std::vector<Property>& properties() {
  static const std::vector<Property> all = [] {
    std::vector<Property> out;
    add_topology_properties(out);
    add_lattice_properties(out);
    return out;
  }();
  return all;
}

const Property* find_property(std::string_view id) {
  for (const auto& p : properties()) {
    if (p.info.id == id) return &p;
  }
  return nullptr;
}

struct Sweep {
  FamilyTally tally;
  long long fail_index = -1;
  Outcome failure;
};

Outcome guarded(const Family& f, long long i) {
  try {
    return f.check(i);
  } catch (const std::exception& e) {
    return Outcome::fail(std::string("exception: ") + e.what());
  }
}

void record(Sweep& s, long long i, Outcome&& o) {
  switch (o.result) {
    case Result::Pass:
      ++s.tally.passed;
      break;
    case Result::NotApplicable:
      ++s.tally.not_applicable;
      break;
    case Result::Fail:
      ++s.tally.failed;
      if (s.fail_index < 0 || i < s.fail_index) {
        s.fail_index = i;
        s.failure = std::move(o);
      }
      break;
  }
}

Sweep sweep_serial(const Family& f) {
  Sweep s;
  s.tally.name = f.name;
  s.tally.checked = f.count;
  for (long long i = 0; i < f.count; ++i) record(s, i, guarded(f, i));
  return s;
}

Sweep sweep_parallel(const Family& f, int workers) {
#ifdef FINTOP_HAVE_OPENMP
  Sweep total;
  total.tally.name = f.name;
  total.tally.checked = f.count;
  const int threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel num_threads(threads)
  {
    Sweep local;
#pragma omp for schedule(dynamic, 256) nowait
    for (long long i = 0; i < f.count; ++i) record(local, i, guarded(f, i));
#pragma omp critical(fintop_sweep_merge)
    {
      total.tally.passed += local.tally.passed;
      total.tally.failed += local.tally.failed;
      total.tally.not_applicable += local.tally.not_applicable;
      if (local.fail_index >= 0 && (total.fail_index < 0 || local.fail_index < total.fail_index)) {
        total.fail_index = local.fail_index;
        total.failure = std::move(local.failure);
      }
    }
  }
  return total;
#else
  (void)workers;
  return sweep_serial(f);
#endif
}

void validate(const SuiteConfig& c) {
  if (c.max_points < 1 || c.max_points > kMaxSuitePoints) {
    throw LimitError("max_points must be in 1.." + std::to_string(kMaxSuitePoints));
  }
  if (c.sample_points < 1 || c.sample_points > kMaxSuitePoints) {
    throw LimitError("sample_points must be in 1.." + std::to_string(kMaxSuitePoints));
  }
  if (c.lattice_points && (*c.lattice_points < 1 || *c.lattice_points > kMaxLatticePoints)) {
    throw LimitError("lattice_points must be in 1.." + std::to_string(kMaxLatticePoints));
  }
  if (c.sample_budget < 0) throw ValidationError("sample_budget must be nonnegative");
  if (c.workers < 0) throw ValidationError("workers must be nonnegative");
  for (const auto& id : c.properties) {
    if (find_property(id) == nullptr) throw ValidationError("unknown property '" + id + "'");
  }
}

}  // namespace

}  // namespace detail

std::string to_string(Mutation m) {
  switch (m) {
    case Mutation::None:
      return "none";
    case Mutation::InvertedWoIII:
      return "wo-iii-inverted";
    case Mutation::SaturationLowestFiber:
      return "saturation-lowest-fiber";
    case Mutation::SwappedRatioLink:
      return "ratio-link-swapped";
  }
  return "none";
}

std::optional<Mutation> mutation_from_string(std::string_view name) {
  for (Mutation m : {Mutation::None, Mutation::InvertedWoIII, Mutation::SaturationLowestFiber,
                     Mutation::SwappedRatioLink}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

long long PropertyReport::checked() const {
  long long t = 0;
  for (const auto& f : families) t += f.checked;
  return t;
}

long long PropertyReport::passed() const {
  long long t = 0;
  for (const auto& f : families) t += f.passed;
  return t;
}

long long PropertyReport::failed() const {
  long long t = 0;
  for (const auto& f : families) t += f.failed;
  return t;
}

long long PropertyReport::not_applicable() const {
  long long t = 0;
  for (const auto& f : families) t += f.not_applicable;
  return t;
}

bool SuiteReport::all_passed() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyReport& p) { return p.failed() == 0; });
}

const std::vector<PropertyInfo>& property_catalogue() {
  static const std::vector<PropertyInfo> infos = [] {
    std::vector<PropertyInfo> out;
    for (const auto& p : detail::properties()) out.push_back(p.info);
    return out;
  }();
  return infos;
}

SuiteReport run_suite(const SuiteConfig& config) {
  detail::validate(config);
  const detail::Context ctx(config);
  SuiteReport report{config, {}};
  for (const auto& prop : detail::properties()) {
    const auto& wanted = config.properties;
    if (!wanted.empty() && std::find(wanted.begin(), wanted.end(), prop.info.id) == wanted.end()) continue;
    const auto start = std::chrono::steady_clock::now();
    PropertyReport pr{prop.info.id, prop.info.module, prop.info.statement, {}, std::nullopt, std::nullopt};
    for (const detail::Family& f : prop.families(ctx)) {
      detail::Sweep s = config.workers == 1 ? detail::sweep_serial(f) : detail::sweep_parallel(f, config.workers);
      if (s.fail_index >= 0 && !pr.witness) {
        pr.witness = Witness{f.name, s.fail_index, s.failure.detail, s.failure.records};
      }
      pr.families.push_back(std::move(s.tally));
    }
    if (config.timings) {
      pr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    report.properties.push_back(std::move(pr));
  }
  return report;
}

std::optional<std::string> replay(std::string_view property, const records::Document& doc, Mutation mutation) {
  const detail::Property* p = detail::find_property(property);
  if (p == nullptr) throw ValidationError("unknown property '" + std::string(property) + "'");
  SuiteConfig config;
  config.mutation = mutation;
  const detail::Context ctx(config);
  detail::Outcome o;
  try {
    o = p->replay(doc, ctx);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    o = detail::Outcome::fail(std::string("exception: ") + e.what());
  }
  if (o.result == detail::Result::Fail) return o.detail;
  return std::nullopt;
}

namespace {

std::string config_line(const SuiteConfig& c) {
  std::ostringstream os;
  os << "max_points=" << c.max_points
     << " lattice_points=" << c.lattice_points.value_or(std::min(c.max_points, kMaxLatticePoints))
     << " sample_budget=" << c.sample_budget << " sample_points=" << c.sample_points << " seed=" << c.seed
     << " mutation=" << to_string(c.mutation);
  return os.str();
}

}  // namespace

std::string to_text(const SuiteReport& report) {
  std::ostringstream os;
  os << "suite " << config_line(report.config) << "\n";
  std::size_t width = 0;
  for (const auto& p : report.properties) width = std::max(width, p.id.size());
  for (const auto& p : report.properties) {
    os << p.id << std::string(width - p.id.size() + 2, ' ') << (p.failed() == 0 ? "PASS" : "FAIL")
       << "  checked=" << p.checked() << " passed=" << p.passed() << " failed=" << p.failed()
       << " n/a=" << p.not_applicable();
    if (p.seconds) {
      std::ostringstream t;
      t.setf(std::ios::fixed);
      t.precision(3);
      t << *p.seconds;
      os << " seconds=" << t.str();
    }
    os << "  " << p.statement << "\n";
  }
  for (const auto& p : report.properties) {
    if (!p.witness) continue;
    const Witness& w = *p.witness;
    os << "\nwitness " << p.id << " [" << w.family << " #" << w.index << "]: " << w.detail << "\n" << w.records;
  }
  const auto failed = std::count_if(report.properties.begin(), report.properties.end(),
                                    [](const PropertyReport& p) { return p.failed() > 0; });
  os << (failed == 0 ? "\nall properties passed\n" : "\n" + std::to_string(failed) + " properties failed\n");
  return os.str();
}

std::string to_json(const SuiteReport& report) {
  using nlohmann::ordered_json;
  const SuiteConfig& c = report.config;
  ordered_json config{{"max_points", c.max_points},
                      {"lattice_points", c.lattice_points.value_or(std::min(c.max_points, kMaxLatticePoints))},
                      {"sample_budget", c.sample_budget},
                      {"sample_points", c.sample_points},
                      {"seed", c.seed},
                      {"mutation", to_string(c.mutation)},
                      {"properties", c.properties}};
  ordered_json props = ordered_json::array();
  for (const auto& p : report.properties) {
    ordered_json families = ordered_json::array();
    for (const auto& f : p.families) {
      families.push_back({{"name", f.name},
                          {"checked", f.checked},
                          {"passed", f.passed},
                          {"failed", f.failed},
                          {"not_applicable", f.not_applicable}});
    }
    ordered_json j{{"id", p.id},
                   {"module", p.module},
                   {"statement", p.statement},
                   {"status", p.failed() == 0 ? "pass" : "fail"},
                   {"checked", p.checked()},
                   {"passed", p.passed()},
                   {"failed", p.failed()},
                   {"not_applicable", p.not_applicable()},
                   {"families", families}};
    if (p.witness) {
      j["witness"] = {{"family", p.witness->family},
                      {"index", p.witness->index},
                      {"detail", p.witness->detail},
                      {"records", p.witness->records}};
    } else {
      j["witness"] = nullptr;
    }
    if (p.seconds) j["seconds"] = *p.seconds;
    props.push_back(std::move(j));
  }
  ordered_json out{{"schema", "fintop-suite-report/1"},
                   {"config", config},
                   {"properties", props},
                   {"all_passed", report.all_passed()}};
  return out.dump(2) + "\n";
}

}  // namespace fintop::verify
