#include <doctest.h>

#include <array>
#include <cstdio>
#include <sys/wait.h>

#include "fintop/records.hpp"
#include "fintop/verify.hpp"
#include "json.hpp"

#ifndef FINTOP_CLI
#error "FINTOP_CLI must name the fintop binary"
#endif
#ifndef FINTOP_CLI_FIXTURES
#error "FINTOP_CLI_FIXTURES must name the fixture directory"
#endif

using namespace fintop;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run fintop_cli(const std::string& args) {
  const std::string command = std::string(FINTOP_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  Run r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string fixture(const std::string& name) { return std::string(FINTOP_CLI_FIXTURES) + "/" + name; }

}  // namespace

TEST_CASE("enumerate counts") {
  const std::array<const char*, 4> expected = {"1\n", "4\n", "29\n", "355\n"};
  for (int n = 1; n <= 4; ++n) {
    const Run r = fintop_cli("enumerate --points " + std::to_string(n) + " --count-only");
    CHECK(r.exit_code == 0);
    CHECK(r.out == expected[static_cast<std::size_t>(n - 1)]);
  }
  const Run r = fintop_cli("enumerate --points 3 --count-only --algorithm filter --cross-check");
  CHECK(r.exit_code == 0);
  CHECK(r.out.starts_with("29\n"));
}

TEST_CASE("enumerated records parse back to the enumerated spaces") {
  const Run r = fintop_cli("enumerate --points 3");
  REQUIRE(r.exit_code == 0);
  const auto doc = records::parse(r.out);
  const auto spaces = enumerate_topologies(3);
  REQUIRE(doc.records.size() == spaces.size());
  for (std::size_t i = 0; i < spaces.size(); ++i) CHECK(records::to_space(doc.records[i], doc) == spaces[i]);
}

TEST_CASE("classify-map on the Sierpinski map") {
  const Run r = fintop_cli("classify-map " + fixture("sierpinski-map.rec"));
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("skeletal = false  [skel-def]") != std::string::npos);
  CHECK(r.out.find("wo-iii  almost_open  false") != std::string::npos);
  const Run s = fintop_cli("--format structured classify-map " + fixture("sierpinski-map.rec"));
  REQUIRE(s.exit_code == 0);
  const auto j = nlohmann::json::parse(s.out);
  CHECK(j["classification"]["skeletal"]["value"] == false);
  CHECK(j["classification"]["injective"]["value"] == true);
  CHECK(j["consistent"] == true);
}

TEST_CASE("space-props") {
  const Run r = fintop_cli("--format structured space-props " + fixture("chain3.rec") + " --subset [0,2] --subset 1");
  REQUIRE(r.exit_code == 0);
  const auto j = nlohmann::json::parse(r.out);
  REQUIRE(j["subsets"].size() == 2);
  CHECK(j["subsets"][0]["closure"] == nlohmann::json::array({0, 1, 2}));
  CHECK(j["subsets"][0]["dense"] == true);
  CHECK(j["subsets"][1]["nowhere_dense"] == true);
  CHECK(fintop_cli("space-props " + fixture("chain3.rec") + " --subset 7").exit_code == 2);
}

TEST_CASE("quotient output round-trips") {
  const Run r = fintop_cli("quotient " + fixture("chain-rel.rec"));
  REQUIRE(r.exit_code == 0);
  const auto in = records::parse_file(fixture("chain-rel.rec"));
  const Quotient expected = quotient(records::to_rel(in.last("rel"), in));
  const auto doc = records::parse(r.out);
  CHECK(records::to_map(doc.last("map"), doc) == expected.projection);
  CHECK(r.out.find("closed_relation false") != std::string::npos);
}

TEST_CASE("lattice canonical output round-trips") {
  const Run r = fintop_cli("lattice canonical " + fixture("gens.rec"));
  REQUIRE(r.exit_code == 0);
  const auto in = records::parse_file(fixture("gens.rec"));
  const ConstraintSystem expected = records::to_sublattice(in.last("sublattice"), in);
  const auto doc = records::parse(r.out);
  CHECK(records::to_sublattice(*doc.named("canonical"), doc) == expected);
  CHECK(records::to_sublattice(*doc.named("basis"), doc) == expected);
}

TEST_CASE("lattice classify, hom check, certify") {
  const Run l = fintop_cli("--format structured lattice classify " + fixture("full3.rec") + " " + fixture("gens.rec"));
  REQUIRE(l.exit_code == 0);
  CHECK(nlohmann::json::parse(l.out)["order_dense"] == false);
  CHECK(nlohmann::json::parse(l.out)["regular"] == true);

  const Run h = fintop_cli("--format structured hom check " + fixture("hom.rec"));
  REQUIRE(h.exit_code == 0);
  const auto hj = nlohmann::json::parse(h.out);
  CHECK(hj["homomorphism"] == true);
  CHECK(hj["normal_form"]["phi"] == nlohmann::json::array({1, 2, -1}));
  const Run nh = fintop_cli("hom check " + fixture("nonhom.rec"));
  CHECK(nh.exit_code == 0);
  CHECK(nh.out.starts_with("homomorphism false"));

  const Run c = fintop_cli("certify " + fixture("discrete-map.rec") + " " + fixture("full2.rec"));
  CHECK(c.exit_code == 0);
  CHECK(c.out.find("regular <- skeletal = true  direct true") != std::string::npos);
}

TEST_CASE("verify exit codes and witness replay") {
  const Run ok = fintop_cli("verify --max-points 2 --props F-enum,P-wo --workers 1");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("all properties passed") != std::string::npos);

  // Two points cannot expose the lowest-fiber bug.
  const Run small = fintop_cli("--format structured verify --max-points 2 --props P-sat --mutation saturation-lowest-fiber");
  CHECK(small.exit_code == 0);
  CHECK(nlohmann::json::parse(small.out)["all_passed"] == true);

  const Run fail = fintop_cli("--format structured verify --max-points 3 --props P-sat --mutation saturation-lowest-fiber");
  CHECK(fail.exit_code == 1);
  const auto fj = nlohmann::json::parse(fail.out);
  const std::string records_text = fj["properties"][0]["witness"]["records"];
  const auto doc = records::parse(records_text);
  CHECK(verify::replay("P-sat", doc, verify::Mutation::SaturationLowestFiber));
}

TEST_CASE("replay subcommand") {
  const std::string path = fixture("sat-witness.rec");
  const Run fails = fintop_cli("replay P-sat " + path + " --mutation saturation-lowest-fiber");
  CHECK(fails.exit_code == 1);
  CHECK(fails.out.starts_with("P-sat FAIL"));
  const Run passes = fintop_cli("replay P-sat " + path);
  CHECK(passes.exit_code == 0);
  CHECK(passes.out == "P-sat PASS\n");
}

TEST_CASE("examples") {
  const Run intero = fintop_cli("--format structured example intero --depth 12");
  CHECK(intero.exit_code == 0);
  CHECK(nlohmann::json::parse(intero.out)["passed"] == true);
  const Run grid = fintop_cli("example grid --k 4");
  CHECK(grid.exit_code == 0);
  CHECK(grid.out.find("join                           blocks=9") != std::string::npos);
  CHECK(fintop_cli("example grid --k 9").exit_code == 2);
}

TEST_CASE("usage and input errors exit with 2") {
  CHECK(fintop_cli("").exit_code == 2);
  CHECK(fintop_cli("enumerate --points 3 --bogus").exit_code == 2);
  CHECK(fintop_cli("enumerate").exit_code == 2);
  CHECK(fintop_cli("--format xml enumerate --points 2").exit_code == 2);
  CHECK(fintop_cli("space-props " + fixture("malformed.rec")).exit_code == 2);
  CHECK(fintop_cli("space-props " + fixture("notopen.rec")).exit_code == 2);
  CHECK(fintop_cli("space-props " + fixture("missing.rec")).exit_code == 2);
  CHECK(fintop_cli("classify-map " + fixture("chain3.rec")).exit_code == 2);
  CHECK(fintop_cli("verify --props P-nope").exit_code == 2);
  CHECK(fintop_cli("verify --max-points 9").exit_code == 2);
  CHECK(fintop_cli("verify --mutation nope").exit_code == 2);
  CHECK(fintop_cli("--help").exit_code == 0);
}
