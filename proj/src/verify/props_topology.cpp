// Properties over finite spaces, continuous maps and equivalence relations.

#include <algorithm>
#include <sstream>

#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"
#include "fintop/oracles.hpp"
#include "suite_internal.hpp"

namespace fintop::verify::detail {

namespace {

std::size_t at(long long i) { return static_cast<std::size_t>(i); }

std::string show(Verdict v) { return std::string(to_string(v)); }

// Decodes a flat index over strata of the given sizes into (stratum, offset).
class Strata {
public:
  explicit Strata(std::vector<long long> sizes) : sizes_(std::move(sizes)) {}
  long long total() const {
    long long t = 0;
    for (long long s : sizes_) t += s;
    return t;
  }
  std::pair<int, long long> decode(long long i) const {
    int k = 0;
    while (i >= sizes_[at(k)]) i -= sizes_[at(k++)];
    return {k, i};
  }

private:
  std::vector<long long> sizes_;
};

int exhaustive_space_bound(const Context& ctx) { return std::max(ctx.config.max_points, kMaxSuitePoints); }

// ---------------------------------------------------------------------------
// Instance families.

std::string print_space(const FinSpace& s) { return records::print(s, "X") + "\n"; }
std::string print_map(const ContMap& m) { return records::print(m, "phi") + "\n"; }
std::string print_rel(const EquivRel& r) { return records::print(r, "r") + "\n"; }
std::string print_rel_pair(const std::pair<EquivRel, EquivRel>& p) {
  return records::print(p.first, "r1") + "\n" + records::print(p.second, "r2") + "\n";
}

template <class Check>
std::vector<Family> space_families(const Context& ctx, const std::string& id, Check check) {
  const int bound = exhaustive_space_bound(ctx);
  std::vector<long long> sizes;
  for (int n = 1; n <= bound; ++n) sizes.push_back(static_cast<long long>(ctx.topologies[at(n)].size()));
  const Strata strata(sizes);
  std::vector<Family> out;
  out.push_back(make_family(
      "exhaustive n<=" + std::to_string(bound), strata.total(),
      [&ctx, strata](long long i) {
        auto [k, j] = strata.decode(i);
        return ctx.topologies[at(k + 1)][at(j)];
      },
      check, print_space));
  if (ctx.config.sample_budget > 0) {
    const std::uint64_t salt = salt_of(id + "/spaces");
    out.push_back(make_family(
        "sampled n=" + std::to_string(ctx.config.sample_points), ctx.config.sample_budget,
        [&ctx, salt](long long i) {
          auto g = ctx.rng(salt, i);
          return ctx.random_topology(g, ctx.config.sample_points);
        },
        check, print_space));
  }
  return out;
}

template <class Check>
std::vector<Family> map_families(const Context& ctx, const std::string& id, Check check) {
  const auto& maps = ctx.exhaustive_maps();
  std::vector<Family> out;
  out.push_back(make_family(
      "exhaustive n<=" + std::to_string(ctx.config.max_points), static_cast<long long>(maps.size()),
      [&ctx, &maps](long long i) { return ctx.materialise(maps[at(i)]); }, check, print_map));
  if (ctx.config.sample_budget > 0) {
    const std::uint64_t salt = salt_of(id + "/maps");
    out.push_back(make_family(
        "sampled n=" + std::to_string(ctx.config.sample_points), ctx.config.sample_budget,
        [&ctx, salt](long long i) {
          auto g = ctx.rng(salt, i);
          const int n = ctx.config.sample_points;
          const FinSpace& dom = ctx.random_topology(g, n);
          const FinSpace& cod = ctx.random_topology(g, n);
          const auto maps = enumerate_continuous_maps(dom, cod);
          return maps[at(static_cast<long long>(g() % maps.size()))];
        },
        check, print_map));
  }
  return out;
}

template <class Check>
std::vector<Family> rel_families(const Context& ctx, const std::string& id, Check check) {
  const int bound = exhaustive_space_bound(ctx);
  std::vector<long long> sizes;
  for (int n = 1; n <= bound; ++n) {
    sizes.push_back(static_cast<long long>(ctx.topologies[at(n)].size() * ctx.partitions[at(n)].size()));
  }
  const Strata strata(sizes);
  std::vector<Family> out;
  out.push_back(make_family(
      "exhaustive n<=" + std::to_string(bound), strata.total(),
      [&ctx, strata](long long i) {
        auto [k, j] = strata.decode(i);
        const auto& parts = ctx.partitions[at(k + 1)];
        const long long p = static_cast<long long>(parts.size());
        return EquivRel::from_labels(ctx.topologies[at(k + 1)][at(j / p)], parts[at(j % p)]);
      },
      check, print_rel));
  if (ctx.config.sample_budget > 0) {
    const std::uint64_t salt = salt_of(id + "/relations");
    out.push_back(make_family(
        "sampled n=" + std::to_string(ctx.config.sample_points), ctx.config.sample_budget,
        [&ctx, salt](long long i) {
          auto g = ctx.rng(salt, i);
          const FinSpace& s = ctx.random_topology(g, ctx.config.sample_points);
          return EquivRel::from_labels(s, random_partition(g, s.size()));
        },
        check, print_rel));
  }
  return out;
}

template <class Check>
std::vector<Family> rel_pair_families(const Context& ctx, const std::string& id, Check check) {
  const int bound = ctx.config.max_points;
  std::vector<long long> sizes;
  for (int n = 1; n <= bound; ++n) {
    const auto p = static_cast<long long>(ctx.partitions[at(n)].size());
    sizes.push_back(static_cast<long long>(ctx.topologies[at(n)].size()) * p * p);
  }
  const Strata strata(sizes);
  std::vector<Family> out;
  out.push_back(make_family(
      "exhaustive n<=" + std::to_string(bound), strata.total(),
      [&ctx, strata](long long i) {
        auto [k, j] = strata.decode(i);
        const auto& parts = ctx.partitions[at(k + 1)];
        const long long p = static_cast<long long>(parts.size());
        const FinSpace& s = ctx.topologies[at(k + 1)][at(j / (p * p))];
        return std::pair{EquivRel::from_labels(s, parts[at((j / p) % p)]),
                         EquivRel::from_labels(s, parts[at(j % p)])};
      },
      check, print_rel_pair));
  if (ctx.config.sample_budget > 0) {
    const std::uint64_t salt = salt_of(id + "/relation-pairs");
    out.push_back(make_family(
        "sampled n=" + std::to_string(ctx.config.sample_points), ctx.config.sample_budget,
        [&ctx, salt](long long i) {
          auto g = ctx.rng(salt, i);
          const FinSpace& s = ctx.random_topology(g, ctx.config.sample_points);
          auto a = EquivRel::from_labels(s, random_partition(g, s.size()));
          auto b = EquivRel::from_labels(s, random_partition(g, s.size()));
          return std::pair{std::move(a), std::move(b)};
        },
        check, print_rel_pair));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite spaces.

Subset closure_oracle(const std::vector<Subset>& closed, int n, Subset a) {
  Subset out = Subset::full(n);
  for (Subset c : closed) {
    if (c.contains(a)) out &= c;
  }
  return out;
}

Subset interior_oracle(const std::vector<Subset>& opens, Subset a) {
  Subset out;
  for (Subset u : opens) {
    if (a.contains(u)) out |= u;
  }
  return out;
}

Outcome check_closure(const FinSpace& s) {
  const int n = s.size();
  const auto closed = s.closed_sets();
  const auto subsets = subsets_of(s.points());
  for (Subset a : subsets) {
    const Subset cl = s.closure(a);
    const Subset in = s.interior(a);
    if (cl != closure_oracle(closed, n, a)) {
      return Outcome::fail("closure(" + a.to_string() + ") = " + cl.to_string() + ", oracle " +
                           closure_oracle(closed, n, a).to_string());
    }
    if (in != interior_oracle(s.opens(), a)) {
      return Outcome::fail("interior(" + a.to_string() + ") = " + in.to_string() + ", oracle " +
                           interior_oracle(s.opens(), a).to_string());
    }
    if (!cl.contains(a) || s.closure(cl) != cl) return Outcome::fail("closure of " + a.to_string() + " not extensive and idempotent");
    if (in != s.closure(a.complement(n)).complement(n)) {
      return Outcome::fail("interior of " + a.to_string() + " is not the dual of closure");
    }
    for (Subset b : subsets) {
      if (b.contains(a) && !s.closure(b).contains(cl)) {
        return Outcome::fail("closure not monotone on " + a.to_string() + " <= " + b.to_string());
      }
    }
  }
  return Outcome::pass();
}

Outcome check_dense(const FinSpace& s) {
  const int n = s.size();
  const auto closed = s.closed_sets();
  for (Subset a : subsets_of(s.points())) {
    bool meets_all = true;
    for (Subset u : s.opens()) {
      if (!u.empty() && !u.intersects(a)) meets_all = false;
    }
    const Subset outside = closure_oracle(closed, n, a).complement(n);
    bool outside_dense = true;
    for (Subset u : s.opens()) {
      if (!u.empty() && !u.intersects(outside)) outside_dense = false;
    }
    const SubsetProps p = classify_subset(s, a);
    if (p.dense != meets_all || is_dense(s, a) != meets_all) {
      return Outcome::fail("dense(" + a.to_string() + ") = " + (p.dense ? "true" : "false") +
                           ", every nonempty open meets it: " + (meets_all ? "true" : "false"));
    }
    if (p.nowhere_dense != outside_dense || is_nowhere_dense(s, a) != outside_dense) {
      return Outcome::fail("nowhere_dense(" + a.to_string() + ") = " + (p.nowhere_dense ? "true" : "false") +
                           ", complement of closure dense: " + (outside_dense ? "true" : "false"));
    }
  }
  return Outcome::pass();
}

Outcome check_canonical(const FinSpace& s) {
  for (Subset a : s.closed_sets()) {
    bool criterion = true;
    for (Subset v : s.opens()) {
      if (v.empty()) continue;
      const Subset b = a & v;
      if (b.empty()) continue;
      const Subspace sub = subspace(s, v);
      if (sub.space.interior(sub.space.closure(sub.to_local(b))).empty()) {
        criterion = false;
        break;
      }
    }
    const bool cc = is_canonically_closed(s, a);
    if (cc != criterion || classify_subset(s, a).canonically_closed != cc) {
      return Outcome::fail("canonically_closed(" + a.to_string() + ") = " + (cc ? "true" : "false") +
                           ", open-trace criterion " + (criterion ? "true" : "false"));
    }
  }
  return Outcome::pass();
}

const long long kTopologyCounts[] = {1, 1, 4, 29, 355};

Outcome check_enumeration(int n) {
  const auto by_preorder = enumerate_topologies(n, EnumerationStrategy::Preorder);
  const auto by_filter = enumerate_topologies(n, EnumerationStrategy::FamilyFilter);
  const auto expected = kTopologyCounts[n];
  if (static_cast<long long>(by_preorder.size()) != expected || static_cast<long long>(by_filter.size()) != expected) {
    return Outcome::fail("counts " + std::to_string(by_preorder.size()) + " (preorder), " +
                         std::to_string(by_filter.size()) + " (family filter), expected " + std::to_string(expected));
  }
  if (by_preorder != by_filter) return Outcome::fail("the two strategies list different topologies");
  if (n <= 3) {
    const auto brute = oracles::topologies_by_brute_force(n);
    for (std::size_t i = 0; i < brute.size(); ++i) {
      if (by_preorder[i].opens() != brute[i]) return Outcome::fail("topology " + std::to_string(i) + " differs from the brute-force oracle");
    }
  }
  return Outcome::pass();
}

// ---------------------------------------------------------------------------
// Continuous maps.

struct ProcedureGroup {
  std::string reference;
  std::vector<std::string> ids;
};

ProcedureGroup group_by_prefix(std::string reference, std::string_view prefix) {
  ProcedureGroup g{std::move(reference), {}};
  for (const auto& p : procedure_registry()) {
    if (p.id.starts_with(prefix)) g.ids.push_back(p.id);
  }
  return g;
}

// Characterisations must match the reference verdict; consequences must not
// be false. Inapplicable procedures are skipped.
Outcome check_group(const ContMap& m, const Kernels& k, const ProcedureGroup& g) {
  const Verdict ref = decide_by(m, g.reference, k);
  if (ref == Verdict::NotApplicable) return Outcome::fail(g.reference + " is not applicable");
  bool any = false;
  std::string bad;
  for (const std::string& id : g.ids) {
    if (id == g.reference) continue;
    const Verdict v = decide_by(m, id, k);
    if (v == Verdict::NotApplicable) continue;
    any = true;
    const bool wrong = find_procedure(id).kind == ProcedureKind::Characterisation ? v != ref : v == Verdict::False;
    if (wrong) bad += (bad.empty() ? "" : ", ") + id + "=" + show(v);
  }
  if (!bad.empty()) return Outcome::fail(g.reference + "=" + show(ref) + " but " + bad);
  return any ? Outcome::pass() : Outcome::not_applicable();
}

Outcome check_saturation(const ContMap& m, const Kernels& k) {
  const auto subsets = subsets_of(m.domain().points());
  std::vector<Subset> saturated;
  for (Subset a : subsets) {
    const Subset got = k.saturation(m, a);
    const Subset want = m.preimage(m.image(a));
    if (got != want) {
      return Outcome::fail("saturation(" + a.to_string() + ") = " + got.to_string() + ", preimage of image " +
                           want.to_string());
    }
    if (got == a) saturated.push_back(a);
  }
  const auto is_saturated = [&](Subset a) { return k.saturation(m, a) == a; };
  for (Subset a : saturated) {
    for (Subset b : saturated) {
      if (!is_saturated(a | b)) return Outcome::fail("union of saturated " + a.to_string() + ", " + b.to_string());
      if (!is_saturated(a - b)) return Outcome::fail("difference of saturated " + a.to_string() + ", " + b.to_string());
    }
  }
  return Outcome::pass();
}

Outcome check_hierarchy(const ContMap& m, const Kernels& k) {
  const MapClassification c = classify_map(m, k);
  if (c.is(MapClass::WeaklyOpen) && !c.is(MapClass::AlmostOpen)) return Outcome::fail("weakly open but not almost open");
  if (c.is(MapClass::Embedding) && !c.is(MapClass::Irreducible)) return Outcome::fail("embedding but not irreducible");
  return Outcome::pass();
}

// ---------------------------------------------------------------------------
// Equivalence relations.

Outcome check_closed_relation(const EquivRel& r) {
  const bool fast = is_closed_relation(r);
  const bool literal = is_closed_relation_literal(r);
  const bool via_quotient = is_closed_relation_via_quotient(r);
  if (fast != literal || fast != via_quotient) {
    return Outcome::fail(std::string("closed: point closures ") + (fast ? "true" : "false") + ", literal " +
                         (literal ? "true" : "false") + ", quotient map closed " + (via_quotient ? "true" : "false"));
  }
  return Outcome::pass();
}

Outcome check_quotient(const EquivRel& r) {
  const Quotient q = quotient(r);
  const ContMap& p = q.projection;
  for (int x = 0; x < r.space().size(); ++x) {
    if (p(x) != r.block_of(x)) return Outcome::fail("projection sends " + std::to_string(x) + " to the wrong block");
  }
  if (decide_by(p, "surj") != Verdict::True) return Outcome::fail("projection not surjective");
  for (Subset s : subsets_of(q.space.points())) {
    if (q.space.is_open(s) != r.space().is_open(p.preimage(s))) {
      return Outcome::fail("quotient openness of " + s.to_string() + " disagrees with its preimage");
    }
  }
  if (decide_by(p, "quot-def") != Verdict::True) return Outcome::fail("projection is not a quotient map by quot-def");
  return Outcome::pass();
}

ConstraintSystem block_constant_lattice(const EquivRel& r) {
  std::vector<Tie> ties;
  for (Subset b : r.blocks()) {
    const int lead = b.lowest();
    b.for_each([&](int x) {
      if (x != lead) ties.push_back({x, lead, Rational(1)});
    });
  }
  return from_constraints(r.space().size(), Subset{}, ties);
}

Outcome check_eqq(const EquivRel& r) {
  const bool i = eqq_condition_i(r);
  const bool ii = eqq_condition_ii(r);
  if (i != eqq_condition_i_literal(r)) return Outcome::fail("condition (i) differs from its literal form");
  if (ii != eqq_condition_ii_literal(r)) return Outcome::fail("condition (ii) differs from its literal form");
  if (!r.space().is_discrete()) return Outcome::pass();
  const auto n = r.space().size();
  const SublatticeFlags f = classify_sublattice(ConstraintSystem::full(n), block_constant_lattice(r));
  if (f.regular != i) return Outcome::fail("block-constant lattice regular=" + std::string(f.regular ? "true" : "false") +
                                           ", condition (i)=" + (i ? "true" : "false"));
  if (f.order_dense != ii) {
    return Outcome::fail("block-constant lattice order_dense=" + std::string(f.order_dense ? "true" : "false") +
                         ", condition (ii)=" + (ii ? "true" : "false"));
  }
  return Outcome::pass();
}

std::vector<std::vector<int>> sorted_labels(const std::vector<EquivRel>& rs) {
  std::vector<std::vector<int>> out;
  for (const auto& r : rs) out.push_back(r.labels());
  std::sort(out.begin(), out.end());
  return out;
}

Outcome check_join(const std::pair<EquivRel, EquivRel>& p) {
  const auto& [a, b] = p;
  const JoinResult fast = join_closed(a, b);
  const JoinResult slow = join_closed_exhaustive(a, b);
  if (fast.join.has_value() != slow.join.has_value() || (fast.join && !(*fast.join == *slow.join))) {
    return Outcome::fail("join_closed and the exhaustive search disagree");
  }
  if (sorted_labels(fast.minimal) != sorted_labels(slow.minimal)) {
    return Outcome::fail("minimal closed relations differ between the two searches");
  }
  if (fast.join) {
    const EquivRel& j = *fast.join;
    if (!is_closed_relation(j) || !j.coarsens(a) || !j.coarsens(b)) return Outcome::fail("join is not a closed upper bound");
  }
  if (a.space().is_discrete()) {
    std::vector<std::pair<int, int>> merges;
    for (const EquivRel* r : {&a, &b}) {
      for (Subset blk : r->blocks()) {
        const int lead = blk.lowest();
        blk.for_each([&](int x) { merges.emplace_back(lead, x); });
      }
    }
    const auto oracle = EquivRel::from_labels(a.space(), oracles::union_find_labels(a.space().size(), merges));
    if (!fast.join || !(*fast.join == oracle)) return Outcome::fail("join on a discrete space differs from union-find");
  }
  return Outcome::pass();
}

// ---------------------------------------------------------------------------

template <class Check>
Property space_property(PropertyInfo info, Check check) {
  const std::string id = info.id;
  return {std::move(info),
          [id, check](const Context& ctx) { return space_families(ctx, id, check); },
          [check](const records::Document& doc, const Context&) {
            return check(records::to_space(doc.last("space"), doc));
          }};
}

template <class Check>
Property map_property(PropertyInfo info, Check check) {
  const std::string id = info.id;
  return {std::move(info),
          [id, check](const Context& ctx) {
            const Kernels* k = &ctx.kernels;
            return map_families(ctx, id, [check, k](const ContMap& m) { return check(m, *k); });
          },
          [check](const records::Document& doc, const Context& ctx) {
            return check(records::to_map(doc.last("map"), doc), ctx.kernels);
          }};
}

template <class Check>
Property rel_property(PropertyInfo info, Check check) {
  const std::string id = info.id;
  return {std::move(info),
          [id, check](const Context& ctx) { return rel_families(ctx, id, check); },
          [check](const records::Document& doc, const Context&) {
            return check(records::to_rel(doc.last("rel"), doc));
          }};
}

Property group_property(PropertyInfo info, ProcedureGroup group) {
  return map_property(std::move(info), [group](const ContMap& m, const Kernels& k) { return check_group(m, k, group); });
}

}  // namespace

void add_topology_properties(std::vector<Property>& out) {
  out.push_back(space_property({"F-closure", "finspace",
                                "closure and interior match the closed-superset and open-subset oracles; closure is "
                                "extensive, idempotent, monotone and dual to interior"},
                               check_closure));
  out.push_back(space_property(
      {"F-dense", "finspace",
       "dense iff every nonempty open set meets the set; nowhere dense iff the complement of the closure is dense"},
      check_dense));
  out.push_back(space_property({"F-canon", "finspace",
                                "a closed set is canonically closed iff its trace on every nonempty open V is empty "
                                "or somewhere dense in V"},
                               check_canonical));
  out.push_back({{"F-enum", "finspace",
                  "topology counts 1, 4, 29, 355 for n = 1..4; preorder and family-filter strategies agree; brute "
                  "force agrees for n <= 3"},
                 [](const Context&) {
                   return std::vector<Family>{make_family(
                       "n=1..4", kMaxSuitePoints, [](long long i) { return static_cast<int>(i) + 1; },
                       check_enumeration, [](int n) { return print_space(FinSpace::discrete(n)); })};
                 },
                 [](const records::Document& doc, const Context&) {
                   return check_enumeration(records::int_field(doc.last("space"), "n"));
                 }});

  out.push_back(group_property({"P-ao", "contmap", "the ao procedures agree with the definition"},
                               group_by_prefix("ao-i", "ao-")));
  out.push_back(group_property(
      {"P-wo", "contmap",
       "the wo procedures agree with the definition, including restriction to some and to every dense subset"},
      group_by_prefix("wo-i", "wo-")));
  out.push_back(group_property(
      {"P-irr", "contmap", "the irr procedures agree; irreducible iff strongly skeletal and weakly injective"},
      group_by_prefix("irr-i", "irr-")));
  out.push_back(group_property(
      {"P-wi", "contmap",
       "the wi characterisation agrees; weakly injective maps satisfy the wi consequences"},
      group_by_prefix("wi-def", "wi-")));
  out.push_back(group_property({"P-mirr", "contmap",
                                "closed maps: irreducible iff the fiber condition; closed and almost injective "
                                "implies irreducible; discrete domain: weakly injective implies almost injective"},
                               ProcedureGroup{"irr-i", {"mirr-i", "mirr-ii", "mirr-iii"}}));
  out.push_back(map_property(
      {"P-sat", "contmap",
       "saturation equals the preimage of the image; unions and differences of saturated sets are saturated"},
      check_saturation));
  out.push_back(map_property(
      {"P-hier", "contmap", "weakly open implies almost open; an embedding is irreducible"}, check_hierarchy));

  out.push_back(rel_property(
      {"E-closed", "equivrel",
       "closedness by point closures, by every closed set and by the quotient map agree"},
      check_closed_relation));
  out.push_back(rel_property(
      {"E-quot", "equivrel", "the projection is a surjective quotient map, checked on every subset"},
      check_quotient));
  out.push_back(rel_property(
      {"E-eqq", "equivrel",
       "eqq conditions agree with their literal forms; on discrete spaces the block-constant lattice is regular iff "
       "(i) and order dense iff (ii)"},
      check_eqq));
  {
    PropertyInfo info{"E-join", "equivrel",
                      "join_closed matches the exhaustive partition search; on discrete spaces it equals the "
                      "union-find closure"};
    out.push_back({info,
                   [](const Context& ctx) { return rel_pair_families(ctx, "E-join", check_join); },
                   [](const records::Document& doc, const Context&) {
                     return check_join({records::to_rel(named_record(doc, "r1"), doc),
                                        records::to_rel(named_record(doc, "r2"), doc)});
                   }});
  }
}

}  // namespace fintop::verify::detail
