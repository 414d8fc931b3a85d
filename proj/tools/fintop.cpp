// fintop: command-line front end for the finite topology and function
// lattice toolkit.
//
// Exit codes: 0 success or all checks passed, 1 a property or assertion
// failed (the witness is printed), 2 usage, parse or input error.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fintop/comphom.hpp"
#include "fintop/contmap.hpp"
#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"
#include "fintop/finspace.hpp"
#include "fintop/funclat.hpp"
#include "fintop/oracles.hpp"
#include "fintop/records.hpp"
#include "fintop/scenarios.hpp"
#include "fintop/verify.hpp"
#include "json.hpp"

namespace {

using namespace fintop;
using Json = nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string format = "text";
  bool structured() const { return format == "structured"; }
};

void emit(const Json& j) { std::cout << j.dump(2) << '\n'; }

const records::Record& only_record(const records::Document& doc, std::string_view kind, const std::string& path) {
  for (auto it = doc.records.rbegin(); it != doc.records.rend(); ++it) {
    if (it->kind == kind) return *it;
  }
  throw ParseError(path + ": no " + std::string(kind) + " record");
}

Json subset_json(Subset s) { return s.points(); }

/// "0,2", "[0, 2]", "{}" or "0 2".
Subset parse_subset(const std::string& text, int n) {
  std::string cleaned;
  for (char c : text) cleaned += (c == ',' || c == '[' || c == ']' || c == '{' || c == '}') ? ' ' : c;
  std::istringstream in(cleaned);
  Subset out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    int p = -1;
    try {
      p = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) throw ParseError("--subset: not a point index: " + token);
    if (p < 0 || p >= n) throw ValidationError("--subset: point " + token + " outside 0.." + std::to_string(n - 1));
    out.insert(p);
  }
  return out;
}

std::string yes(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------------------

int space_props(const Options& opt, const std::string& path, const std::vector<std::string>& subsets) {
  const auto doc = records::parse_file(path);
  const FinSpace space = records::to_space(only_record(doc, "space", path), doc);
  std::vector<Subset> targets;
  for (const auto& s : subsets) targets.push_back(parse_subset(s, space.size()));

  if (opt.structured()) {
    Json j;
    j["points"] = space.size();
    j["discrete"] = space.is_discrete();
    j["t0"] = space.is_t0();
    Json nb = Json::array();
    for (int x = 0; x < space.size(); ++x) nb.push_back(subset_json(space.neighborhood(x)));
    j["neighborhoods"] = nb;
    Json list = Json::array();
    for (Subset a : targets) {
      const SubsetProps p = classify_subset(space, a);
      list.push_back({{"subset", subset_json(a)},
                      {"closure", subset_json(space.closure(a))},
                      {"interior", subset_json(space.interior(a))},
                      {"open", space.is_open(a)},
                      {"closed", p.closed},
                      {"clopen", p.clopen},
                      {"dense", p.dense},
                      {"nowhere_dense", p.nowhere_dense},
                      {"canonically_closed", p.canonically_closed},
                      {"canonically_open", p.canonically_open}});
    }
    j["subsets"] = list;
    emit(j);
    return kExitOk;
  }
  std::cout << "points " << space.size() << "  discrete " << yes(space.is_discrete()) << "  t0 " << yes(space.is_t0())
            << '\n';
  for (int x = 0; x < space.size(); ++x) std::cout << "  N(" << x << ") = " << space.neighborhood(x).to_string() << '\n';
  for (Subset a : targets) {
    const SubsetProps p = classify_subset(space, a);
    std::cout << "subset " << a.to_string() << '\n'
              << "  closure " << space.closure(a).to_string() << "  interior " << space.interior(a).to_string() << '\n'
              << "  open " << yes(space.is_open(a)) << "  closed " << yes(p.closed) << "  clopen " << yes(p.clopen)
              << '\n'
              << "  dense " << yes(p.dense) << "  nowhere_dense " << yes(p.nowhere_dense) << '\n'
              << "  canonically_closed " << yes(p.canonically_closed) << "  canonically_open "
              << yes(p.canonically_open) << '\n';
  }
  return kExitOk;
}

int classify_map_cmd(const Options& opt, const std::string& path) {
  const auto doc = records::parse_file(path);
  const ContMap map = records::to_map(only_record(doc, "map", path), doc);
  const MapClassification c = classify_map(map);
  const bool enumerable = map.domain().enumerable() && map.codomain().enumerable();

  struct Row {
    const ProcedureInfo* info;
    std::optional<Verdict> verdict;
  };
  std::vector<Row> rows;
  bool consistent = true;
  for (const ProcedureInfo& p : procedure_registry()) {
    Row row{&p, std::nullopt};
    if (enumerable || !p.enumerating) {
      row.verdict = decide_by(map, p.id);
      const bool flag = c.is(p.target);
      if (p.kind == ProcedureKind::Characterisation && *row.verdict != Verdict::NotApplicable &&
          (*row.verdict == Verdict::True) != flag) {
        consistent = false;
      }
      if (p.kind == ProcedureKind::Consequence && *row.verdict == Verdict::False) consistent = false;
    }
    rows.push_back(row);
  }

  if (opt.structured()) {
    Json j;
    Json flags;
    for (std::size_t i = 0; i < kMapClassCount; ++i) {
      const auto mc = static_cast<MapClass>(i);
      flags[std::string(to_string(mc))] = {{"value", c.is(mc)}, {"procedure", c[mc].procedure}};
    }
    j["classification"] = flags;
    Json table = Json::array();
    for (const Row& r : rows) {
      table.push_back({{"id", r.info->id},
                       {"class", std::string(to_string(r.info->target))},
                       {"kind", r.info->kind == ProcedureKind::Characterisation ? "characterisation" : "consequence"},
                       {"verdict", r.verdict ? Json(std::string(to_string(*r.verdict))) : Json(nullptr)}});
    }
    j["procedures"] = table;
    j["consistent"] = consistent;
    emit(j);
  } else {
    std::cout << "classification\n";
    for (std::size_t i = 0; i < kMapClassCount; ++i) {
      const auto mc = static_cast<MapClass>(i);
      std::cout << "  " << to_string(mc) << " = " << yes(c.is(mc)) << "  [" << c[mc].procedure << "]\n";
    }
    std::cout << "procedures\n";
    for (const Row& r : rows) {
      std::cout << "  " << r.info->id << "  " << to_string(r.info->target) << "  "
                << (r.verdict ? std::string(to_string(*r.verdict)) : std::string("skipped")) << '\n';
    }
    if (!consistent) std::cout << "procedures disagree with the classification\n";
  }
  return consistent ? kExitOk : kExitFailed;
}

int quotient_cmd(const Options& opt, const std::string& path) {
  const auto doc = records::parse_file(path);
  const EquivRel rel = records::to_rel(only_record(doc, "rel", path), doc);
  const Quotient q = quotient(rel);
  const bool closed = is_closed_relation(rel);
  const std::string space_text = records::print(q.space, "quotient");
  const std::string map_text = records::print(q.projection, "projection");
  if (opt.structured()) {
    Json blocks = Json::array();
    for (Subset b : rel.blocks()) blocks.push_back(subset_json(b));
    emit({{"blocks", blocks},
          {"closed_relation", closed},
          {"eqq_i", eqq_condition_i(rel)},
          {"eqq_ii", eqq_condition_ii(rel)},
          {"space", space_text},
          {"projection", map_text}});
  } else {
    std::cout << "# blocks " << rel.block_count() << "  closed_relation " << yes(closed) << '\n'
              << "# eqq (i) " << yes(eqq_condition_i(rel)) << "  eqq (ii) " << yes(eqq_condition_ii(rel)) << '\n'
              << map_text << '\n';
  }
  return kExitOk;
}

ConstraintSystem load_sublattice(const std::string& path) {
  const auto doc = records::parse_file(path);
  return records::to_sublattice(only_record(doc, "sublattice", path), doc);
}

int lattice_canonical(const Options& opt, const std::string& path) {
  const ConstraintSystem cs = load_sublattice(path);
  const std::string text = records::print(cs, "canonical");
  const std::vector<RationalVector> b = basis(cs);
  if (opt.structured()) {
    Json rows = Json::array();
    for (const auto& v : b) {
      Json row = Json::array();
      for (const Rational& q : v) row.push_back(to_string(q));
      rows.push_back(row);
    }
    emit({{"record", text}, {"summary", describe(cs)}, {"basis", rows}});
  } else {
    std::cout << "# " << describe(cs) << '\n'
              << text << '\n'
              << records::print_generators(cs.size(), b, "basis") << '\n';
  }
  return kExitOk;
}

int lattice_classify(const Options& opt, const std::string& ambient_path, const std::string& sub_path) {
  const ConstraintSystem ambient = load_sublattice(ambient_path);
  const ConstraintSystem e = load_sublattice(sub_path);
  const SublatticeFlags f = classify_sublattice(ambient, e);
  const std::vector<std::pair<const char*, bool>> flags = {
      {"ideal", f.ideal},           {"band", f.band},       {"projection_band", f.projection_band},
      {"order_dense", f.order_dense}, {"urysohn", f.urysohn}, {"weakly_urysohn", f.weakly_urysohn},
      {"regular", f.regular}};
  if (opt.structured()) {
    Json j;
    for (const auto& [name, v] : flags) j[name] = v;
    emit(j);
  } else {
    for (const auto& [name, v] : flags) std::cout << name << " = " << yes(v) << '\n';
  }
  return kExitOk;
}

int hom_check(const Options& opt, const std::string& path) {
  const auto doc = records::parse_file(path);
  const records::Record& r = only_record(doc, "hom", path);
  const std::vector<RationalVector> rows = records::rows_of(r);
  const int n = r.find("cols") ? records::int_field(r, "cols") : rows.empty() ? 0 : static_cast<int>(rows[0].size());
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw ValidationError(path + ": rows must all have " + std::to_string(n) + " entries");
  }
  const bool structural = is_homomorphism(rows, n);
  const bool definitional = is_homomorphism_by_absolute_values(rows, n);
  bool ok = structural == definitional;
  Json j{{"homomorphism", structural}, {"definitional", definitional}};
  std::ostringstream text;
  text << "homomorphism " << yes(structural) << "  (definitional test " << yes(definitional) << ")\n";
  if (structural) {
    const HomMatrix t(rows, n);
    const NormalForm nf = normal_form(t);
    const bool reassembles = reassemble(nf, n) == t;
    const HocReport h = hoc_conditions(t);
    ok = ok && reassembles && h.all();
    Json weights = Json::array();
    for (const Rational& w : nf.weights) weights.push_back(to_string(w));
    j["normal_form"] = {{"weights", weights}, {"phi", nf.phi}, {"reassembles", reassembles}};
    j["order_continuity"] = {{"i", h.order_continuous},
                             {"ii", h.preserves_suprema},
                             {"iii", h.kernel_band},
                             {"iv", h.preimage_bands},
                             {"v", h.bidual_inclusion}};
    text << "normal form  phi = [";
    for (std::size_t i = 0; i < nf.phi.size(); ++i) text << (i ? ", " : "") << nf.phi[i];
    text << "]  weights = [";
    for (std::size_t i = 0; i < nf.weights.size(); ++i) text << (i ? ", " : "") << to_string(nf.weights[i]);
    text << "]  reassembles " << yes(reassembles) << '\n'
         << "order continuity  (i) " << yes(h.order_continuous) << "  (ii) " << yes(h.preserves_suprema) << "  (iii) "
         << yes(h.kernel_band) << "  (iv) " << yes(h.preimage_bands) << "  (v) " << yes(h.bidual_inclusion) << '\n';
  }
  j["consistent"] = ok;
  if (!ok) text << "checks disagree\n";
  if (opt.structured()) {
    emit(j);
  } else {
    std::cout << text.str();
  }
  return ok ? kExitOk : kExitFailed;
}

int certify_cmd(const Options& opt, const std::string& map_path, const std::string& lattice_path) {
  const auto doc = records::parse_file(map_path);
  const ContMap map = records::to_map(only_record(doc, "map", map_path), doc);
  const ConstraintSystem e = load_sublattice(lattice_path);
  const CertificateReport r = certify_composition(map, e);
  if (opt.structured()) {
    Json list = Json::array();
    for (const Certificate& c : r.certificates) {
      list.push_back({{"property", c.property},
                      {"certificate", c.certificate},
                      {"value", c.value},
                      {"direct", c.direct_available ? Json(c.direct) : Json(nullptr)},
                      {"agrees", c.agrees()}});
    }
    emit({{"discrete", r.discrete}, {"certificates", list}, {"agrees", r.agrees()}});
  } else {
    std::cout << "discrete " << yes(r.discrete) << '\n';
    for (const Certificate& c : r.certificates) {
      std::cout << "  " << c.property << " <- " << c.certificate << " = " << yes(c.value);
      if (c.direct_available) std::cout << "  direct " << yes(c.direct) << (c.agrees() ? "" : "  MISMATCH");
      std::cout << '\n';
    }
  }
  return r.agrees() ? kExitOk : kExitFailed;
}

int enumerate_cmd(const Options& opt, int points, bool count_only, const std::string& algorithm, bool cross_check) {
  const auto strategy = algorithm == "filter" ? EnumerationStrategy::FamilyFilter : EnumerationStrategy::Preorder;
  const std::vector<FinSpace> spaces = enumerate_topologies(points, strategy);
  bool agree = true;
  std::string note;
  if (cross_check) {
    const auto other = enumerate_topologies(
        points, strategy == EnumerationStrategy::Preorder ? EnumerationStrategy::FamilyFilter : EnumerationStrategy::Preorder);
    agree = other == spaces;
    if (points <= 3) {
      const auto brute = oracles::topologies_by_brute_force(points);
      std::vector<std::vector<Subset>> listed;
      for (const FinSpace& s : spaces) listed.push_back(s.opens());
      agree = agree && brute == listed;
      note = "both algorithms and the brute-force filter";
    } else {
      note = "both algorithms";
    }
  }
  if (opt.structured()) {
    Json j{{"points", points}, {"count", spaces.size()}};
    if (cross_check) j["agree"] = agree;
    if (!count_only) {
      Json list = Json::array();
      for (std::size_t i = 0; i < spaces.size(); ++i) list.push_back(records::print(spaces[i], "t" + std::to_string(i)));
      j["spaces"] = list;
    }
    emit(j);
  } else if (count_only) {
    std::cout << spaces.size() << '\n';
    if (cross_check) std::cout << "# " << note << (agree ? " agree\n" : " DISAGREE\n");
  } else {
    for (std::size_t i = 0; i < spaces.size(); ++i) std::cout << records::print(spaces[i], "t" + std::to_string(i)) << '\n';
  }
  return agree ? kExitOk : kExitFailed;
}

int verify_cmd(const Options& opt, const verify::SuiteConfig& config) {
  const verify::SuiteReport r = verify::run_suite(config);
  std::cout << (opt.structured() ? verify::to_json(r) : verify::to_text(r)) << '\n';
  return r.all_passed() ? kExitOk : kExitFailed;
}

int replay_cmd(const Options& opt, const std::string& property, const std::string& path, verify::Mutation m) {
  const auto doc = records::parse_file(path);
  const std::optional<std::string> failure = verify::replay(property, doc, m);
  if (opt.structured()) {
    emit({{"property", property}, {"mutation", verify::to_string(m)}, {"failed", failure.has_value()},
          {"detail", failure ? Json(*failure) : Json(nullptr)}});
  } else {
    std::cout << property << (failure ? " FAIL  " + *failure : std::string(" PASS")) << '\n';
  }
  return failure ? kExitFailed : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite topological spaces, continuous maps and function lattices"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();

  std::string file;
  std::string file2;
  std::vector<std::string> subsets;

  auto* space_cmd = app.add_subcommand("space-props", "Closure, interior and subset properties");
  space_cmd->add_option("file", file, "Space record file")->required();
  space_cmd->add_option("--subset", subsets, "Subset such as 0,2 or [0,2] (repeatable)")->allow_extra_args(false);

  auto* classify_cmd = app.add_subcommand("classify-map", "Classify a continuous map");
  classify_cmd->add_option("file", file, "Map record file")->required();

  auto* quot_cmd = app.add_subcommand("quotient", "Quotient by an equivalence relation");
  quot_cmd->add_option("file", file, "Relation record file")->required();

  auto* lattice_cmd = app.add_subcommand("lattice", "Sublattices of R^n");
  lattice_cmd->require_subcommand(1);
  auto* canon_cmd = lattice_cmd->add_subcommand("canonical", "Canonical constraint form");
  canon_cmd->add_option("file", file, "Sublattice record file")->required();
  auto* lclass_cmd = lattice_cmd->add_subcommand("classify", "Sublattice flags relative to an ambient");
  lclass_cmd->add_option("ambient", file, "Ambient sublattice file")->required();
  lclass_cmd->add_option("sub", file2, "Sublattice file")->required();

  auto* hom_cmd = app.add_subcommand("hom", "Lattice homomorphisms");
  hom_cmd->require_subcommand(1);
  auto* hom_check_cmd = hom_cmd->add_subcommand("check", "Homomorphism tests and order continuity");
  hom_check_cmd->add_option("file", file, "Hom record file")->required();

  auto* cert_cmd = app.add_subcommand("certify", "Certificates for a composition lattice");
  cert_cmd->add_option("map", file, "Map record file")->required();
  cert_cmd->add_option("lattice", file2, "Sublattice record file")->required();

  int points = 0;
  bool count_only = false;
  bool cross_check = false;
  std::string algorithm = "preorder";
  auto* enum_cmd = app.add_subcommand("enumerate", "All topologies on N points");
  enum_cmd->add_option("--points", points, "Number of points")->required()->check(CLI::Range(1, 5));
  enum_cmd->add_flag("--count-only", count_only, "Print the count only");
  enum_cmd->add_option("--algorithm", algorithm, "preorder or filter")
      ->check(CLI::IsMember({"preorder", "filter"}))
      ->capture_default_str();
  enum_cmd->add_flag("--cross-check", cross_check, "Compare against the other algorithm and the brute-force filter");

  verify::SuiteConfig config;
  std::string mutation = "none";
  std::optional<int> lattice_points;
  auto* verify_cmd_ = app.add_subcommand("verify", "Run the property suite");
  verify_cmd_->add_option("--max-points", config.max_points, "Exhaustive sweep size")->capture_default_str();
  verify_cmd_->add_option("--props", config.properties, "Property ids (default all)")->delimiter(',');
  verify_cmd_->add_option("--seed", config.seed, "Seed for sampled families")->capture_default_str();
  verify_cmd_->add_option("--workers", config.workers, "Worker threads, 0 = all cores")->capture_default_str();
  verify_cmd_->add_option("--sample-budget", config.sample_budget, "Random instances per sampled family")
      ->capture_default_str();
  verify_cmd_->add_option("--sample-points", config.sample_points, "Points of sampled spaces")->capture_default_str();
  verify_cmd_->add_option("--lattice-points", lattice_points, "Coordinates in the lattice families");
  verify_cmd_->add_option("--mutation", mutation, "Injected fault")->capture_default_str();
  verify_cmd_->add_flag("--timings", config.timings, "Report seconds per property");

  std::string property;
  auto* replay_cmd_ = app.add_subcommand("replay", "Re-run one property on a witness file");
  replay_cmd_->add_option("property", property, "Property id")->required();
  replay_cmd_->add_option("file", file, "Witness record file")->required();
  replay_cmd_->add_option("--mutation", mutation, "Injected fault")->capture_default_str();

  int depth = 0;
  int k = 0;
  auto* example_cmd = app.add_subcommand("example", "Worked examples");
  example_cmd->require_subcommand(1);
  auto* intero_cmd = example_cmd->add_subcommand("intero", "Join of closed relations on Cantor space");
  intero_cmd->add_option("--depth", depth, "Word depth L")->required();
  auto* grid_cmd = example_cmd->add_subcommand("grid", "Square with a diagonal segment");
  grid_cmd->add_option("--k", k, "Grid size")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    const auto parse_mutation = [&] {
      const auto m = verify::mutation_from_string(mutation);
      if (!m) throw ValidationError("unknown mutation " + mutation);
      return *m;
    };
    if (*space_cmd) return space_props(opt, file, subsets);
    if (*classify_cmd) return classify_map_cmd(opt, file);
    if (*quot_cmd) return quotient_cmd(opt, file);
    if (*canon_cmd) return lattice_canonical(opt, file);
    if (*lclass_cmd) return lattice_classify(opt, file, file2);
    if (*hom_check_cmd) return hom_check(opt, file);
    if (*cert_cmd) return certify_cmd(opt, file, file2);
    if (*enum_cmd) return enumerate_cmd(opt, points, count_only, algorithm, cross_check);
    if (*verify_cmd_) {
      config.mutation = parse_mutation();
      config.lattice_points = lattice_points;
      return verify_cmd(opt, config);
    }
    if (*replay_cmd_) return replay_cmd(opt, property, file, parse_mutation());
    if (*intero_cmd) {
      const auto r = scenarios::intero_scenario(depth);
      std::cout << (opt.structured() ? scenarios::to_json(r) : scenarios::to_text(r)) << '\n';
      return r.passed() ? kExitOk : kExitFailed;
    }
    if (*grid_cmd) {
      const auto r = scenarios::grid_scenario(k);
      std::cout << (opt.structured() ? scenarios::to_json(r) : scenarios::to_text(r)) << '\n';
      return r.passed() ? kExitOk : kExitFailed;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
