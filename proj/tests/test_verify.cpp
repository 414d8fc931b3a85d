#include <doctest.h>

#include <set>

#include "fintop/error.hpp"
#include "fintop/verify.hpp"
#include "json.hpp"

using namespace fintop;
using namespace fintop::verify;

namespace {

const PropertyReport& property(const SuiteReport& r, std::string_view id) {
  for (const auto& p : r.properties) {
    if (p.id == id) return p;
  }
  FAIL("missing property " << id);
  throw std::logic_error("unreachable");
}

SuiteConfig small(int max_points = 2) {
  SuiteConfig c;
  c.max_points = max_points;
  c.workers = 1;
  return c;
}

}  // namespace

TEST_CASE("every property passes at two points") {
  const SuiteReport r = run_suite(small());
  CHECK(r.all_passed());
  CHECK(r.properties.size() == property_catalogue().size());
  for (const auto& p : r.properties) {
    CHECK_MESSAGE(p.checked() > 0, p.id);
    CHECK(p.checked() == p.passed() + p.failed() + p.not_applicable());
    CHECK_FALSE(p.witness);
    CHECK_FALSE(p.seconds);
  }
}

TEST_CASE("the exhaustive map family is every continuous map between small topologies") {
  for (int m = 1; m <= 3; ++m) {
    long long expected = 0;
    for (int a = 1; a <= m; ++a) {
      for (int b = 1; b <= m; ++b) {
        for (const auto& dom : enumerate_topologies(a)) {
          for (const auto& cod : enumerate_topologies(b)) expected += static_cast<long long>(enumerate_continuous_maps(dom, cod).size());
        }
      }
    }
    SuiteConfig c = small(m);
    c.properties = {"P-ao"};
    const SuiteReport r = run_suite(c);
    CHECK(property(r, "P-ao").checked() == expected);
  }
}

TEST_CASE("the suite passes at three points with samples") {
  SuiteConfig c = small(3);
  c.sample_budget = 200;
  c.properties = {"F-closure", "P-ao", "P-wo", "P-irr", "P-wi", "P-mirr", "P-sat", "P-hier", "E-join", "L-sw", "L-dis"};
  const SuiteReport r = run_suite(c);
  CHECK(r.all_passed());
  CHECK(property(r, "P-wo").families.size() == 2);
  CHECK(property(r, "P-wo").families[1].checked == 200);
}

TEST_CASE("reports are deterministic") {
  SuiteConfig c = small();
  c.sample_budget = 50;
  const SuiteReport a = run_suite(c);
  const SuiteReport b = run_suite(c);
  CHECK(to_text(a) == to_text(b));
  CHECK(to_json(a) == to_json(b));
}

TEST_CASE("the parallel sweep reports exactly what the serial loop reports") {
  for (Mutation m : {Mutation::None, Mutation::InvertedWoIII, Mutation::SaturationLowestFiber}) {
    SuiteConfig serial = small(3);
    serial.sample_budget = 100;
    serial.mutation = m;
    serial.properties = {"P-wo", "P-sat", "P-irr", "E-closed", "L-sw"};
    SuiteConfig parallel = serial;
    parallel.workers = 0;
    SuiteConfig three = serial;
    three.workers = 3;
    const std::string expected = to_json(run_suite(serial));
    CHECK(to_json(run_suite(parallel)) == expected);
    CHECK(to_json(run_suite(three)) == expected);
  }
}

TEST_CASE("mutation fixtures are caught with replayable witnesses") {
  struct Case {
    Mutation mutation;
    std::string property;
  };
  for (const Case& c : {Case{Mutation::InvertedWoIII, "P-wo"}, Case{Mutation::SaturationLowestFiber, "P-sat"},
                        Case{Mutation::SwappedRatioLink, "L-sw"}}) {
    CAPTURE(to_string(c.mutation));
    SuiteConfig config = small(3);
    config.mutation = c.mutation;
    const SuiteReport r = run_suite(config);
    CHECK_FALSE(r.all_passed());
    const PropertyReport& p = property(r, c.property);
    REQUIRE(p.failed() > 0);
    REQUIRE(p.witness);
    const auto doc = records::parse(p.witness->records);
    const auto again = replay(c.property, doc, c.mutation);
    REQUIRE(again);
    CHECK(*again == p.witness->detail);
    CHECK_FALSE(replay(c.property, doc, Mutation::None));
  }
}

TEST_CASE("the inverted wo-iii witness is the one-point identity") {
  SuiteConfig c = small(3);
  c.mutation = Mutation::InvertedWoIII;
  c.properties = {"P-wo", "P-ao"};
  const SuiteReport r = run_suite(c);
  const auto& w = property(r, "P-wo").witness;
  REQUIRE(w);
  CHECK(w->index == 0);
  const auto doc = records::parse(w->records);
  const ContMap m = records::to_map(doc.last("map"), doc);
  CHECK(m.domain().size() == 1);
  CHECK(m.codomain().size() == 1);
  CHECK(property(r, "P-ao").failed() == 0);
}

TEST_CASE("the saturation witness is minimal in the enumeration order") {
  SuiteConfig c = small(3);
  c.mutation = Mutation::SaturationLowestFiber;
  c.properties = {"P-sat"};
  const SuiteReport r = run_suite(c);
  const auto& w = property(r, "P-sat").witness;
  REQUIRE(w);
  // No map on at most two domain points can expose the lowest-fiber bug:
  // a set meeting two fibers there is the whole domain.
  const auto doc = records::parse(w->records);
  CHECK(records::to_map(doc.last("map"), doc).domain().size() == 3);
}

TEST_CASE("timings are opt-in") {
  SuiteConfig c = small();
  c.properties = {"F-enum"};
  c.timings = true;
  const SuiteReport r = run_suite(c);
  CHECK(r.properties[0].seconds);
  CHECK(to_text(r).find("seconds=") != std::string::npos);
}

TEST_CASE("configuration errors") {
  SuiteConfig c = small();
  c.properties = {"P-nope"};
  CHECK_THROWS_AS(run_suite(c), ValidationError);
  c = small();
  c.max_points = kMaxSuitePoints + 1;
  CHECK_THROWS_AS(run_suite(c), LimitError);
  c = small();
  c.lattice_points = 0;
  CHECK_THROWS_AS(run_suite(c), LimitError);
  CHECK_THROWS_AS(replay("P-nope", records::parse(""), Mutation::None), ValidationError);
  CHECK(mutation_from_string("ratio-link-swapped") == Mutation::SwappedRatioLink);
  CHECK_FALSE(mutation_from_string("bogus"));
}

TEST_CASE("structured report carries the documented fields") {
  SuiteConfig c = small();
  c.mutation = Mutation::InvertedWoIII;
  c.properties = {"P-wo", "F-enum"};
  const auto j = nlohmann::json::parse(to_json(run_suite(c)));
  CHECK(j["schema"] == "fintop-suite-report/1");
  CHECK(j["all_passed"] == false);
  CHECK(j["config"]["mutation"] == "wo-iii-inverted");
  REQUIRE(j["properties"].size() == 2);
  const auto& wo = j["properties"][1];
  CHECK(wo["id"] == "P-wo");
  CHECK(wo["status"] == "fail");
  CHECK(wo["witness"]["index"] == 0);
  CHECK(j["properties"][0]["witness"].is_null());
}

TEST_CASE("the lattice family is exactly the sublattices the generator family spans") {
  for (int n = 1; n <= 3; ++n) {
    std::set<std::string> listed;
    for (const auto& cs : lattice_family(n)) CHECK(listed.insert(records::print(cs)).second);
    // Brute force over every set of at most three distinct vectors.
    std::vector<RationalVector> all;
    const int count = n == 1 ? 5 : n == 2 ? 25 : 125;
    for (int code = 0; code < count; ++code) {
      RationalVector v;
      for (int i = 0, c = code; i < n; ++i, c /= 5) v.emplace_back(c % 5 - 2);
      all.push_back(v);
    }
    std::set<std::string> spanned;
    spanned.insert(records::print(canonical_form(n, {})));
    for (std::size_t a = 0; a < all.size(); ++a) {
      spanned.insert(records::print(canonical_form(n, {all[a]})));
      for (std::size_t b = a + 1; b < all.size(); ++b) {
        spanned.insert(records::print(canonical_form(n, {all[a], all[b]})));
        for (std::size_t c = b + 1; c < all.size(); ++c) {
          spanned.insert(records::print(canonical_form(n, {all[a], all[b], all[c]})));
        }
      }
    }
    CHECK(listed == spanned);
  }
}
