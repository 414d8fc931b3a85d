// Properties over function lattices and lattice homomorphisms.

#include <algorithm>
#include <array>
#include <functional>
#include <memory>
#include <map>
#include <unordered_map>

#include "fintop/comphom.hpp"
#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"
#include "fintop/oracles.hpp"
#include "suite_internal.hpp"

namespace fintop::verify {

namespace {

std::size_t at(long long i) { return static_cast<std::size_t>(i); }

// Ratios of a group member to its representative: {1, 2} or {1/2, 1}.
void for_each_ratio_choice(const std::vector<int>& members, std::vector<Tie>& ties,
                           const std::function<void()>& fn) {
  const std::size_t k = members.size() - 1;
  for (int scale = 0; scale < 2; ++scale) {
    const Rational other = scale == 0 ? Rational(2) : Rational(1, 2);
    for (std::size_t mask = 0; mask < (std::size_t{1} << k); ++mask) {
      // mask 0 is all ones; list it once.
      if (scale == 1 && mask == 0) continue;
      const std::size_t before = ties.size();
      for (std::size_t j = 0; j < k; ++j) {
        ties.push_back({members[j + 1], members[0], ((mask >> j) & 1) != 0 ? other : Rational(1)});
      }
      fn();
      ties.resize(before);
    }
  }
}

}  // namespace

std::vector<ConstraintSystem> lattice_family(int n) {
  if (n < 1 || n > kMaxLatticePoints) throw LimitError("lattice family needs 1 <= n <= " + std::to_string(kMaxLatticePoints));
  std::vector<ConstraintSystem> out;
  for (Subset zeros : subsets_of(Subset::full(n))) {
    const std::vector<int> live = zeros.complement(n).points();
    const int m = static_cast<int>(live.size());
    auto emit_groups = [&](const std::vector<std::vector<int>>& groups) {
      std::vector<Tie> ties;
      std::function<void(std::size_t)> rec = [&](std::size_t g) {
        if (g == groups.size()) {
          out.push_back(from_constraints(n, zeros, ties));
          return;
        }
        for_each_ratio_choice(groups[g], ties, [&] { rec(g + 1); });
      };
      rec(0);
    };
    if (m == 0) {
      emit_groups({});
      continue;
    }
    for_each_partition(m, [&](const std::vector<int>& labels) {
      std::vector<std::vector<int>> groups;
      for (int i = 0; i < m; ++i) {
        const auto l = static_cast<std::size_t>(labels[at(i)]);
        if (groups.size() <= l) groups.resize(l + 1);
        groups[l].push_back(live[at(i)]);
      }
      emit_groups(groups);
    });
  }
  return out;
}

namespace detail {

namespace {

// ---------------------------------------------------------------------------
// Generator sets: k distinct vectors of {-2..2}^n in colex order of their
// indices, k = 0..3.

long long binomial(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr int kMaxGenerators = 3;
constexpr int kEntryLo = -2;
constexpr int kEntryHi = 2;
constexpr int kEntryCount = kEntryHi - kEntryLo + 1;

long long vector_count(int n) {
  long long v = 1;
  for (int i = 0; i < n; ++i) v *= kEntryCount;
  return v;
}

struct GeneratorSet {
  int n = 0;
  std::vector<RationalVector> gens;
};

std::string print_generator_set(const GeneratorSet& g) { return records::print_generators(g.n, g.gens, "G") + "\n"; }

// Per-thread memo: oracle closure per span, plus one constraint system
// already shown to have exactly that solution set.
struct SpanEntry {
  std::vector<oracles::IntVector> closure;
  std::optional<ConstraintSystem> verified;
};

struct SpanHash {
  std::size_t operator()(const oracles::IntVector& k) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::int64_t x : k) h = (h ^ static_cast<std::uint64_t>(x)) * 1099511628211ULL;
    return static_cast<std::size_t>(h);
  }
};

Outcome check_stone_weierstrass(int n, const std::vector<RationalVector>& gens,
                                const std::vector<oracles::IntVector>& ints, CanonicalFn canonical) {
  thread_local std::unordered_map<oracles::IntVector, SpanEntry, SpanHash> memo;
  const ConstraintSystem cs = canonical(n, gens);
  const auto span = oracles::row_space(ints, n);
  oracles::IntVector key{n};
  for (const auto& r : span) key.insert(key.end(), r.begin(), r.end());
  auto it = memo.find(key);
  if (it == memo.end()) it = memo.emplace(std::move(key), SpanEntry{oracles::lattice_closure(n, ints), {}}).first;
  SpanEntry& e = it->second;
  if (e.verified && *e.verified == cs) return Outcome::pass();
  if (!oracles::same_solution_set(cs, e.closure)) {
    std::string rows;
    for (const auto& r : e.closure) {
      std::string cells;
      for (std::int64_t x : r) cells += (cells.empty() ? "" : ",") + std::to_string(x);
      rows += (rows.empty() ? "[" : ", [") + cells + "]";
    }
    return Outcome::fail("canonical form " + describe(cs) + " is not the closure spanned by " + rows);
  }
  if (!e.verified) e.verified = cs;
  return Outcome::pass();
}

Outcome check_stone_weierstrass(const GeneratorSet& g, CanonicalFn canonical) {
  std::vector<oracles::IntVector> ints;
  for (const auto& v : g.gens) ints.push_back(oracles::to_int_vector(v));
  return check_stone_weierstrass(g.n, g.gens, ints, canonical);
}

// Codes of the k vectors of the rank-th k-subset, in colex order.
std::vector<long long> unrank_subset(long long universe, int k, long long rank) {
  std::vector<long long> codes(static_cast<std::size_t>(k));
  long long hi = universe;
  for (int i = k; i >= 1; --i) {
    long long lo = i - 1;  // binomial(lo, i) <= rank < binomial(hi, i)
    while (hi - lo > 1) {
      const long long mid = (lo + hi) / 2;
      if (binomial(mid, i) <= rank) lo = mid; else hi = mid;
    }
    codes[at(i - 1)] = lo;
    rank -= binomial(lo, i);
    hi = lo;
  }
  return codes;
}

// The family checks in place: decoding into reused per-thread buffers
// avoids allocating fresh rationals for every one of tens of millions of sets.
Family generator_family(int n, int k, CanonicalFn canonical) {
  const long long universe = vector_count(n);
  auto decode = [n, k, universe](long long rank, std::vector<RationalVector>& gens,
                                 std::vector<oracles::IntVector>& ints) {
    // The buffers are reused across families of other shapes.
    gens.resize(at(k));
    ints.resize(at(k));
    for (auto& g : gens) g.resize(at(n));
    for (auto& v : ints) v.resize(at(n));
    const auto codes = unrank_subset(universe, k, rank);
    for (int v = 0; v < k; ++v) {
      long long code = codes[at(v)];
      for (int i = 0; i < n; ++i) {
        const auto x = static_cast<std::int64_t>(kEntryLo + code % kEntryCount);
        code /= kEntryCount;
        ints[at(v)][at(i)] = x;
        gens[at(v)][at(i)] = static_cast<long>(x);
      }
    }
  };
  return {"n=" + std::to_string(n) + " generators=" + std::to_string(k), binomial(universe, k),
          [n, decode, canonical](long long rank) {
            thread_local std::vector<RationalVector> gens;
            thread_local std::vector<oracles::IntVector> ints;
            decode(rank, gens, ints);
            Outcome o;
            try {
              o = check_stone_weierstrass(n, gens, ints, canonical);
            } catch (const std::exception& e) {
              o = Outcome::fail(std::string("exception: ") + e.what());
            }
            if (o.result == Result::Fail) o.records = print_generator_set({n, gens});
            return o;
          }};
}

std::vector<Family> generator_families(const Context& ctx) {
  std::vector<Family> out;
  for (int n = 1; n <= ctx.lattice_points; ++n) {
    for (int k = 0; k <= kMaxGenerators; ++k) out.push_back(generator_family(n, k, ctx.canonical));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sublattice chains from the lattice family.

struct LatticeTable {
  std::vector<ConstraintSystem> members;
  /// below[i]: indices j with members[j] inside members[i].
  std::vector<std::vector<int>> below;
};

LatticeTable lattice_table(int n) {
  LatticeTable t{lattice_family(n), {}};
  const auto size = t.members.size();
  t.below.resize(size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      if (contains(t.members[i], t.members[j])) t.below[i].push_back(static_cast<int>(j));
    }
  }
  return t;
}

struct Triple {
  ConstraintSystem f, e, g;
};

std::string print_triple(const Triple& t) {
  return records::print(t.f, "F") + "\n" + records::print(t.e, "E") + "\n" + records::print(t.g, "G") + "\n";
}

std::string print_pair(const Triple& t) { return records::print(t.f, "F") + "\n" + records::print(t.e, "E") + "\n"; }

Outcome check_disjointness(const Triple& t) {
  const auto g = basis(t.g);
  const ConstraintSystem gd_e = disjoint_complement(t.e, g);
  const ConstraintSystem gd_f = disjoint_complement(t.f, g);
  if (gd_e != intersect(gd_f, t.e)) {
    return Outcome::fail("G^d in E is " + describe(gd_e) + ", G^d in F meet E is " + describe(intersect(gd_f, t.e)));
  }
  const ConstraintSystem gdd_f = disjoint_complement(t.f, basis(gd_f));
  const ConstraintSystem gdd_e = disjoint_complement(t.e, basis(gd_e));
  const ConstraintSystem trace = intersect(gdd_f, t.e);
  if (!contains(gdd_e, trace)) {
    return Outcome::fail("G^dd in F meet E (" + describe(trace) + ") not inside G^dd in E (" + describe(gdd_e) + ")");
  }
  if (classify_sublattice(t.e, t.g).band && t.g != trace) {
    return Outcome::fail("G is a band in E but G^dd in F meet E is " + describe(trace));
  }
  return Outcome::pass();
}

Outcome check_menag(const Triple& t) {
  // t.e is an ideal of t.f and t.g plays H.
  const ConstraintSystem trace = intersect(t.e, t.g);
  if (!classify_sublattice(t.g, trace).ideal) {
    return Outcome::fail("E meet H = " + describe(trace) + " is not an ideal of H");
  }
  return Outcome::pass();
}

std::string flags_text(const SublatticeFlags& f) {
  std::string s;
  auto add = [&](const char* name, bool v) { s += std::string(s.empty() ? "" : " ") + name + "=" + (v ? "1" : "0"); };
  add("ideal", f.ideal);
  add("band", f.band);
  add("projection_band", f.projection_band);
  add("order_dense", f.order_dense);
  add("urysohn", f.urysohn);
  add("weakly_urysohn", f.weakly_urysohn);
  add("regular", f.regular);
  return s;
}

Outcome check_flags(const Triple& t) {
  const SublatticeFlags f = classify_sublattice(t.f, t.e);
  const bool chain = (!f.ideal || f.band) && (!f.band || f.projection_band) && (!f.order_dense || f.weakly_urysohn) &&
                     (!f.urysohn || f.weakly_urysohn) && f.regular;
  if (!chain) return Outcome::fail("implication chain broken: " + flags_text(f));
  // In finite dimension every ideal is a projection band cut out by its
  // support, and each density flag forces E to contain every atom of F.
  SublatticeFlags expected;
  const bool cut_out = zero_ideal(t.f, support(basis(t.e)).complement(t.f.size())) == t.e;
  expected.ideal = expected.band = expected.projection_band = cut_out;
  expected.order_dense = expected.urysohn = expected.weakly_urysohn = t.e == t.f;
  expected.regular = true;
  if (f != expected) return Outcome::fail("flags " + flags_text(f) + ", expected " + flags_text(expected));
  return Outcome::pass();
}

enum class ChainKind { Disjointness, Menag, Flags };

std::vector<Family> chain_families(const Context& ctx, ChainKind kind) {
  std::vector<Family> out;
  for (int n = 1; n <= ctx.lattice_points; ++n) {
    auto table = std::make_shared<const LatticeTable>(lattice_table(n));
    // Flatten (f, e, g) index triples once.
    auto triples = std::make_shared<std::vector<std::array<int, 3>>>();
    const auto size = static_cast<int>(table->members.size());
    for (int f = 0; f < size; ++f) {
      for (int e : table->below[at(f)]) {
        if (kind == ChainKind::Flags) {
          triples->push_back({f, e, e});
          continue;
        }
        if (kind == ChainKind::Menag) {
          if (!classify_sublattice(table->members[at(f)], table->members[at(e)]).ideal) continue;
          for (int h : table->below[at(f)]) triples->push_back({f, e, h});
          continue;
        }
        for (int g : table->below[at(e)]) triples->push_back({f, e, g});
      }
    }
    auto gen = [table, triples](long long i) {
      const auto& ix = (*triples)[at(i)];
      return Triple{table->members[at(ix[0])], table->members[at(ix[1])], table->members[at(ix[2])]};
    };
    const std::string name = "n=" + std::to_string(n);
    const auto count = static_cast<long long>(triples->size());
    switch (kind) {
      case ChainKind::Disjointness:
        out.push_back(make_family(name, count, gen, check_disjointness, print_triple));
        break;
      case ChainKind::Menag:
        out.push_back(make_family(name, count, gen, check_menag, print_triple));
        break;
      case ChainKind::Flags:
        out.push_back(make_family(name, count, gen, check_flags, print_pair));
        break;
    }
  }
  return out;
}

Triple triple_of(const records::Document& doc, bool with_g) {
  Triple t;
  t.f = records::to_sublattice(named_record(doc, "F"), doc);
  t.e = records::to_sublattice(named_record(doc, "E"), doc);
  t.g = with_g ? records::to_sublattice(named_record(doc, "G"), doc) : t.e;
  return t;
}

// ---------------------------------------------------------------------------
// Matrices.

constexpr int kMaxMatrixSide = 3;

struct RawMatrix {
  int n = 0;
  std::vector<RationalVector> rows;
};

std::string print_raw(const RawMatrix& m) { return records::print_rows(m.n, m.rows, "T") + "\n"; }

Outcome check_hom_tests(const RawMatrix& m) {
  const bool structural = is_homomorphism(m.rows, m.n);
  const bool definitional = is_homomorphism_by_absolute_values(m.rows, m.n);
  if (structural != definitional) {
    return Outcome::fail(std::string("structural test ") + (structural ? "true" : "false") + ", |Tf| = T|f| test " +
                         (definitional ? "true" : "false"));
  }
  return Outcome::pass();
}

std::vector<Family> matrix_families(int side) {
  std::vector<Family> out;
  for (int m = 1; m <= side; ++m) {
    for (int n = 1; n <= side; ++n) {
      long long count = 1;
      for (int i = 0; i < m * n; ++i) count *= kEntryCount;
      out.push_back(make_family(
          std::to_string(m) + "x" + std::to_string(n), count,
          [m, n](long long code) {
            RawMatrix r{n, std::vector<RationalVector>(at(m), RationalVector(at(n)))};
            for (int i = 0; i < m; ++i) {
              for (int j = 0; j < n; ++j) {
                r.rows[at(i)][at(j)] = kEntryLo + static_cast<int>(code % kEntryCount);
                code /= kEntryCount;
              }
            }
            return r;
          },
          check_hom_tests, print_raw));
    }
  }
  return out;
}

constexpr int kMonomialMax = 3;

std::string print_hom(const HomMatrix& t) { return records::print(t, "T") + "\n"; }

template <class Check>
std::vector<Family> monomial_families(Check check) {
  std::vector<Family> out;
  for (int m = 1; m <= kMaxMatrixSide; ++m) {
    for (int n = 1; n <= kMaxMatrixSide; ++n) {
      const long long per_row = static_cast<long long>(n) * kMonomialMax + 1;
      long long count = 1;
      for (int i = 0; i < m; ++i) count *= per_row;
      out.push_back(make_family(
          std::to_string(m) + "x" + std::to_string(n), count,
          [m, n, per_row](long long code) {
            std::vector<RationalVector> rows(at(m), RationalVector(at(n)));
            for (int i = 0; i < m; ++i) {
              const long long c = code % per_row;
              code /= per_row;
              if (c > 0) rows[at(i)][at((c - 1) / kMonomialMax)] = static_cast<int>((c - 1) % kMonomialMax) + 1;
            }
            return HomMatrix(std::move(rows), n);
          },
          check, print_hom));
    }
  }
  return out;
}

Outcome check_hoc(const HomMatrix& t) {
  const HocReport r = hoc_conditions(t);
  if (!r.all()) {
    return Outcome::fail(std::string("hoc conditions (i)..(v) = ") + (r.order_continuous ? "1" : "0") +
                         (r.preserves_suprema ? "1" : "0") + (r.kernel_band ? "1" : "0") +
                         (r.preimage_bands ? "1" : "0") + (r.bidual_inclusion ? "1" : "0"));
  }
  return check_hom_tests({t.cols(), t.matrix()});
}

Outcome check_normal_form(const HomMatrix& t) {
  const NormalForm nf = normal_form(t);
  for (int i = 0; i < t.rows(); ++i) {
    const int p = nf.phi[at(i)];
    const Rational& w = nf.weights[at(i)];
    if ((p < 0) != (sgn(w) == 0) || sgn(w) < 0) return Outcome::fail("row " + std::to_string(i) + " has an inconsistent weight");
  }
  if (!(reassemble(nf, t.cols()) == t)) return Outcome::fail("reassembled matrix differs");
  return Outcome::pass();
}

// ---------------------------------------------------------------------------
// Composition certificates on discrete spaces.

Outcome check_certificates(const ContMap& phi) {
  const CertificateReport r = certify_composition(phi, ConstraintSystem::full(phi.codomain().size()));
  if (!r.discrete) return Outcome::fail("discrete case not recognised");
  for (const Certificate& c : r.certificates) {
    if (!c.direct_available) return Outcome::fail(c.property + " has no direct verdict");
    if (!c.agrees()) {
      return Outcome::fail(c.property + " from " + c.certificate + " = " + (c.value ? "true" : "false") +
                           ", direct lattice verdict " + (c.direct ? "true" : "false"));
    }
  }
  return Outcome::pass();
}

std::vector<Family> discrete_map_families() {
  std::vector<Family> out;
  for (int a = 1; a <= kMaxSuitePoints; ++a) {
    for (int b = 1; b <= kMaxSuitePoints; ++b) {
      long long count = 1;
      for (int i = 0; i < a; ++i) count *= b;
      out.push_back(make_family(
          std::to_string(a) + "->" + std::to_string(b), count,
          [a, b](long long code) {
            std::vector<int> table(at(a));
            for (int i = 0; i < a; ++i) {
              table[at(i)] = static_cast<int>(code % b);
              code /= b;
            }
            return make_map_unchecked(FinSpace::discrete(a), FinSpace::discrete(b), std::move(table));
          },
          check_certificates, [](const ContMap& m) { return records::print(m, "phi") + "\n"; }));
    }
  }
  return out;
}

}  // namespace

void add_lattice_properties(std::vector<Property>& out) {
  out.push_back({{"L-sw", "funclat",
                  "canonical_form has the solution set of the lattice-linear closure of its generators, for every "
                  "set of at most three distinct vectors in {-2..2}^n"},
                 generator_families,
                 [](const records::Document& doc, const Context& ctx) {
                   const auto& r = doc.last("sublattice");
                   return check_stone_weierstrass({records::int_field(r, "n"), records::generators_of(r)}, ctx.canonical);
                 }});
  out.push_back({{"L-dis", "funclat",
                  "for G in E in F: G^d in E is G^d in F meet E; G^dd in F meet E lies in G^dd in E; a band G of E "
                  "is G^dd in F meet E"},
                 [](const Context& ctx) { return chain_families(ctx, ChainKind::Disjointness); },
                 [](const records::Document& doc, const Context&) { return check_disjointness(triple_of(doc, true)); }});
  out.push_back({{"L-menag", "funclat", "E ideal in F and H a sublattice of F: E meet H is an ideal of H"},
                 [](const Context& ctx) { return chain_families(ctx, ChainKind::Menag); },
                 [](const records::Document& doc, const Context&) { return check_menag(triple_of(doc, true)); }});
  out.push_back({{"L-flags", "funclat",
                  "ideal => band => projection band; order dense => weakly Urysohn; Urysohn => weakly Urysohn; "
                  "every flag matches its finite-dimensional description"},
                 [](const Context& ctx) { return chain_families(ctx, ChainKind::Flags); },
                 [](const records::Document& doc, const Context&) { return check_flags(triple_of(doc, false)); }});

  out.push_back({{"H-hom", "comphom",
                  "the structural homomorphism test agrees with |Tf| = T|f| on every matrix with entries in {-2..2}"},
                 [](const Context& ctx) { return matrix_families(std::min(kMaxMatrixSide, ctx.lattice_points)); },
                 [](const records::Document& doc, const Context&) {
                   const auto& r = doc.last("hom");
                   return check_hom_tests({records::int_field(r, "cols"), records::rows_of(r)});
                 }});
  out.push_back({{"H-hoc", "comphom",
                  "every row-monomial matrix with entries in {0..3} satisfies all five hoc conditions and both "
                  "homomorphism tests"},
                 [](const Context&) { return monomial_families(check_hoc); },
                 [](const records::Document& doc, const Context&) {
                   return check_hoc(records::to_hom(doc.last("hom"), doc));
                 }});
  out.push_back({{"H-nf", "comphom", "normal_form reassembles to the original matrix"},
                 [](const Context&) { return monomial_families(check_normal_form); },
                 [](const records::Document& doc, const Context&) {
                   return check_normal_form(records::to_hom(doc.last("hom"), doc));
                 }});
  out.push_back({{"H-com", "comphom",
                  "on discrete spaces up to four points every composition certificate equals the direct lattice "
                  "verdict"},
                 [](const Context&) { return discrete_map_families(); },
                 [](const records::Document& doc, const Context&) {
                   return check_certificates(records::to_map(doc.last("map"), doc));
                 }});
}

}  // namespace detail

}  // namespace fintop::verify
