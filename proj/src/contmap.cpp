#include "fintop/contmap.hpp"

#include <algorithm>
#include <string>

#include "fintop/error.hpp"

namespace fintop {

Subset ContMap::image(Subset a) const {
  Subset out;
  a.for_each([&](int x) { out.insert(table_[static_cast<std::size_t>(x)]); });
  return out;
}

Subset ContMap::preimage(Subset b) const {
  Subset out;
  for (std::size_t x = 0; x < table_.size(); ++x) {
    if (b.contains(table_[x])) out.insert(static_cast<int>(x));
  }
  return out;
}

std::optional<Subset> continuity_witness(const FinSpace& domain, const FinSpace& codomain,
                                         const std::vector<int>& table) {
  // Preimages of minimal neighbourhoods suffice: every open set is a union of them.
  for (int y = 0; y < codomain.size(); ++y) {
    const Subset v = codomain.neighborhood(y);
    Subset pre;
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (v.contains(table[x])) pre.insert(static_cast<int>(x));
    }
    if (!domain.is_open(pre)) return v;
  }
  return std::nullopt;
}

ContMap make_map_unchecked(FinSpace domain, FinSpace codomain, std::vector<int> table) {
  ContMap m;
  m.domain_ = std::move(domain);
  m.codomain_ = std::move(codomain);
  m.table_ = std::move(table);
  return m;
}

ContMap make_map(FinSpace domain, FinSpace codomain, std::vector<int> table) {
  if (static_cast<int>(table.size()) != domain.size()) {
    throw ValidationError("map table has " + std::to_string(table.size()) + " entries, domain has " +
                          std::to_string(domain.size()) + " points");
  }
  for (std::size_t x = 0; x < table.size(); ++x) {
    if (table[x] < 0 || table[x] >= codomain.size()) {
      throw ValidationError("map sends point " + std::to_string(x) + " to " +
                            std::to_string(table[x]) + ", outside the codomain");
    }
  }
  if (auto v = continuity_witness(domain, codomain, table)) {
    Subset pre;
    for (std::size_t x = 0; x < table.size(); ++x) {
      if (v->contains(table[x])) pre.insert(static_cast<int>(x));
    }
    throw ValidationError("map is not continuous: preimage of open " + v->to_string() + " is " +
                          pre.to_string() + ", not open");
  }
  return make_map_unchecked(std::move(domain), std::move(codomain), std::move(table));
}

Subset saturation(const ContMap& map, Subset a) { return map.preimage(map.image(a)); }

ContMap restrict_to(const ContMap& map, Subset a) {
  Subspace sub = subspace(map.domain(), a);
  std::vector<int> table;
  for (int p : sub.to_parent) table.push_back(map(p));
  return make_map_unchecked(std::move(sub.space), map.codomain(), std::move(table));
}

ContMap corestrict_to_image(const ContMap& map) {
  if (map.domain().size() == 0) return map;
  Subspace sub = subspace(map.codomain(), map.image());
  std::vector<int> table;
  for (int y : map.table()) table.push_back(sub.to_local(Subset::singleton(y)).lowest());
  return make_map_unchecked(map.domain(), std::move(sub.space), std::move(table));
}

std::vector<ContMap> enumerate_continuous_maps(const FinSpace& domain, const FinSpace& codomain,
                                               std::uint64_t budget) {
  const int n = domain.size();
  const int m = codomain.size();
  std::uint64_t tables = 1;
  for (int i = 0; i < n; ++i) {
    tables *= static_cast<std::uint64_t>(m);
    if (tables > budget) {
      throw LimitError("map enumeration " + std::to_string(m) + "^" + std::to_string(n) +
                       " exceeds the budget " + std::to_string(budget));
    }
  }
  std::vector<ContMap> out;
  if (m == 0) return out;
  std::vector<int> table(static_cast<std::size_t>(n), 0);
  // Depth-first over points in index order; a partial table is extended only
  // while it is monotone for the specialisation order among assigned points.
  auto consistent = [&](int x) {
    const int fx = table[static_cast<std::size_t>(x)];
    for (int y = 0; y < x; ++y) {
      const int fy = table[static_cast<std::size_t>(y)];
      if (domain.neighborhood(x).contains(y) && !codomain.neighborhood(fx).contains(fy)) return false;
      if (domain.neighborhood(y).contains(x) && !codomain.neighborhood(fy).contains(fx)) return false;
    }
    return true;
  };
  std::function<void(int)> extend = [&](int x) {
    if (x == n) {
      out.push_back(make_map_unchecked(domain, codomain, table));
      return;
    }
    for (int v = 0; v < m; ++v) {
      table[static_cast<std::size_t>(x)] = v;
      if (consistent(x)) extend(x + 1);
    }
  };
  extend(0);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::array<std::string_view, kMapClassCount> kClassNames = {
    "weakly_open",    "almost_open",  "skeletal",      "strongly_skeletal", "irreducible",
    "weakly_injective", "almost_injective", "open_map", "closed_map",        "embedding",
    "quotient_map",   "surjective",   "injective"};

std::vector<Subset> sorted(std::vector<Subset> v) {
  std::sort(v.begin(), v.end(), BySizeThenValue{});
  return v;
}

std::vector<Subset> nonempty_opens(const FinSpace& s) {
  std::vector<Subset> out;
  for (Subset u : s.opens()) {
    if (!u.empty()) out.push_back(u);
  }
  return sorted(std::move(out));
}

std::vector<Subset> proper_closed(const FinSpace& s) {
  std::vector<Subset> out;
  for (Subset a : s.closed_sets()) {
    if (a != s.points()) out.push_back(a);
  }
  return sorted(std::move(out));
}

std::vector<Subset> all_subsets(const FinSpace& s) {
  if (!s.enumerable()) {
    throw LimitError("subset quantifier on " + std::to_string(s.size()) + " points");
  }
  return subsets_of(s.points());
}

bool is_saturated(const ContMap& m, Subset a, const Kernels& k) { return k.saturation(m, a) == a; }

Verdict call(const ContMap& m, std::string_view id, const Kernels& k) { return decide_by(m, id, k); }
bool holds(const ContMap& m, std::string_view id, const Kernels& k) {
  return call(m, id, k) == Verdict::True;
}

// weakly open --------------------------------------------------------------

Verdict ao_i(const ContMap& m, const Kernels&) {
  const FinSpace& y = m.codomain();
  for (Subset u : nonempty_opens(m.domain())) {
    if (y.interior(m.image(u)).empty()) return Verdict::False;
  }
  return Verdict::True;
}

Verdict ao_i_basis(const ContMap& m, const Kernels&) {
  for (int x = 0; x < m.domain().size(); ++x) {
    if (m.codomain().interior(m.image(m.domain().neighborhood(x))).empty()) return Verdict::False;
  }
  return Verdict::True;
}

Verdict ao_ii(const ContMap& m, bool dense) {
  const FinSpace& x = m.domain();
  const auto opens = nonempty_opens(x);
  for (Subset u : opens) {
    bool found = false;
    for (Subset w : opens) {
      if (!u.contains(w)) continue;
      if (dense && !x.closure(w).contains(u)) continue;
      if (m.codomain().is_open(m.image(w))) {
        found = true;
        break;
      }
    }
    if (!found) return Verdict::False;
  }
  return Verdict::True;
}

Verdict ao_iii(const ContMap& m, const Kernels&) {
  for (Subset a : all_subsets(m.codomain())) {
    if (is_dense(m.codomain(), a) && !is_dense(m.domain(), m.preimage(a))) return Verdict::False;
  }
  return Verdict::True;
}

// almost open --------------------------------------------------------------

bool almost_open_at(const ContMap& m, Subset u) {
  const FinSpace& y = m.codomain();
  return !y.interior(y.closure(m.image(u))).empty();
}

Verdict wo_i(const ContMap& m, const Kernels&) {
  for (Subset u : nonempty_opens(m.domain())) {
    if (!almost_open_at(m, u)) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wo_i_basis(const ContMap& m, const Kernels&) {
  for (int x = 0; x < m.domain().size(); ++x) {
    if (!almost_open_at(m, m.domain().neighborhood(x))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wo_ii(const ContMap& m, const Kernels&) {
  const FinSpace& x = m.domain();
  const FinSpace& y = m.codomain();
  for (Subset v : sorted(y.opens())) {
    if (!x.closure(m.preimage(v)).contains(x.interior(m.preimage(y.closure(v))))) {
      return Verdict::False;
    }
  }
  return Verdict::True;
}

Verdict wo_iii(const ContMap& m, const Kernels&) {
  for (Subset v : sorted(m.codomain().opens())) {
    if (is_dense(m.codomain(), v) && !is_dense(m.domain(), m.preimage(v))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wo_iv(const ContMap& m, bool closed_only) {
  const FinSpace& y = m.codomain();
  for (Subset a : all_subsets(y)) {
    if (closed_only && !y.is_closed(a)) continue;
    if (is_nowhere_dense(y, a) && !is_nowhere_dense(m.domain(), m.preimage(a))) {
      return Verdict::False;
    }
  }
  return Verdict::True;
}

Verdict wo_v(const ContMap& m, bool canonical) {
  const FinSpace& x = m.domain();
  const FinSpace& y = m.codomain();
  const std::vector<Subset> sources = canonical ? all_subsets(x) : sorted(x.opens());
  for (Subset u : sources) {
    if (canonical && !is_canonically_closed(x, u)) continue;
    if (!is_canonically_closed(y, y.closure(m.image(u)))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wo_vi(const ContMap& m, bool every) {
  const FinSpace& x = m.domain();
  for (Subset d : all_subsets(x)) {
    if (d.empty() || !is_dense(x, d)) continue;
    const bool ok = wo_i(restrict_to(m, d), reference_kernels()) == Verdict::True;
    if (every && !ok) return Verdict::False;
    if (!every && ok) return Verdict::True;
  }
  return verdict(every);
}

// skeletal -----------------------------------------------------------------

Verdict skel_def(const ContMap& m, const Kernels& k) {
  return wo_i_basis(corestrict_to_image(m), k);
}

Verdict sskel_def(const ContMap& m, const Kernels& k) {
  return ao_i_basis(corestrict_to_image(m), k);
}

// irreducible --------------------------------------------------------------

bool image_dense_from(const ContMap& m, Subset a) {
  return m.codomain().closure(m.image(a)).contains(m.image());
}

Verdict irr_i(const ContMap& m, const Kernels&) {
  for (Subset a : proper_closed(m.domain())) {
    if (image_dense_from(m, a)) return Verdict::False;
  }
  return Verdict::True;
}

Verdict irr_i_basis(const ContMap& m, const Kernels&) {
  // Every proper closed set lies in a maximal one, the complement of some N(x).
  const FinSpace& x = m.domain();
  for (int p = 0; p < x.size(); ++p) {
    if (image_dense_from(m, x.neighborhood(p).complement(x.size()))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict irr_ii(const ContMap& m, bool dense) {
  const FinSpace& x = m.domain();
  const auto ys = sorted(m.codomain().opens());
  for (Subset u : nonempty_opens(x)) {
    bool found = false;
    for (Subset v : ys) {
      const Subset pre = m.preimage(v);
      if (pre.empty() || !u.contains(pre)) continue;
      if (dense && !x.closure(pre).contains(u)) continue;
      found = true;
      break;
    }
    if (!found) return Verdict::False;
  }
  return Verdict::True;
}

Verdict irr_iii(const ContMap& m, const Kernels& k) {
  return verdict(holds(m, "sskel-def", k) && holds(m, "wi-def", k));
}

Verdict irr_iv(const ContMap& m, const Kernels& k) {
  if (!holds(m, "sskel-def", k)) return Verdict::False;
  for (Subset a : proper_closed(m.domain())) {
    if (is_dense(m.domain(), k.saturation(m, a))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict mirr_i(const ContMap& m, const Kernels& k) {
  if (!holds(m, "closed-def", k)) return Verdict::NotApplicable;
  for (Subset a : proper_closed(m.domain())) {
    if (k.saturation(m, a) == m.domain().points()) return Verdict::False;
  }
  return Verdict::True;
}

Verdict mirr_ii(const ContMap& m, const Kernels& k) {
  if (!holds(m, "closed-def", k) || !holds(m, "ai-def", k)) return Verdict::NotApplicable;
  return call(m, "irr-i", k);
}

// weakly / almost injective -----------------------------------------------

Verdict wi_def(const ContMap& m, const Kernels& k) {
  const auto opens = nonempty_opens(m.domain());
  for (Subset u : opens) {
    bool found = false;
    for (Subset w : opens) {
      if (u.contains(w) && is_saturated(m, w, k)) {
        found = true;
        break;
      }
    }
    if (!found) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wi_def_basis(const ContMap& m, const Kernels& k) {
  for (int x = 0; x < m.domain().size(); ++x) {
    if (largest_open_saturated(m, m.domain().neighborhood(x), k).empty()) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wi_i(const ContMap& m, const Kernels& k) {
  const FinSpace& x = m.domain();
  const auto opens = sorted(x.opens());
  for (Subset u : nonempty_opens(x)) {
    bool found = false;
    for (Subset w : opens) {
      if (u.contains(w) && x.closure(w).contains(u) && is_saturated(m, w, k)) {
        found = true;
        break;
      }
    }
    if (!found) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wi_ii(const ContMap& m, const Kernels& k) {
  if (!holds(m, "wi-def", k)) return Verdict::NotApplicable;
  const FinSpace& x = m.domain();
  for (Subset a : all_subsets(x)) {
    if (!is_nowhere_dense(x, k.saturation(m, a) - x.closure(a))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict wi_iii(const ContMap& m, const Kernels& k) {
  if (!holds(m, "wi-def", k)) return Verdict::NotApplicable;
  const FinSpace& x = m.domain();
  const Subspace img = subspace(m.codomain(), m.image());
  for (Subset a : all_subsets(x)) {
    if (!is_nowhere_dense(x, a)) continue;
    if (!img.space.interior(img.to_local(m.image(a))).empty()) return Verdict::False;
  }
  return Verdict::True;
}

Verdict ai_def(const ContMap& m, const Kernels& k) {
  Subset z;
  for (int x = 0; x < m.domain().size(); ++x) {
    if (k.saturation(m, Subset::singleton(x)) == Subset::singleton(x)) z.insert(x);
  }
  return verdict(is_dense(m.domain(), z));
}

Verdict mirr_iii(const ContMap& m, const Kernels& k) {
  // Finite metrizable spaces are discrete.
  if (!m.domain().is_discrete() || !holds(m, "wi-def", k)) return Verdict::NotApplicable;
  return call(m, "ai-def", k);
}

// auxiliary classes --------------------------------------------------------

Verdict open_def(const ContMap& m, const Kernels&) {
  for (int x = 0; x < m.domain().size(); ++x) {
    if (!m.codomain().is_open(m.image(m.domain().neighborhood(x)))) return Verdict::False;
  }
  return Verdict::True;
}

Verdict closed_def(const ContMap& m, const Kernels&) {
  // Closed sets are unions of point closures.
  for (int x = 0; x < m.domain().size(); ++x) {
    if (!m.codomain().is_closed(m.image(m.domain().closure(Subset::singleton(x))))) {
      return Verdict::False;
    }
  }
  return Verdict::True;
}

bool injective(const ContMap& m) { return m.image().size() == m.domain().size(); }
bool surjective(const ContMap& m) { return m.image() == m.codomain().points(); }

Verdict embed_def(const ContMap& m, const Kernels&) {
  if (!injective(m)) return Verdict::False;
  const Subset img = m.image();
  for (int x = 0; x < m.domain().size(); ++x) {
    if (m.image(m.domain().neighborhood(x)) != (m.codomain().neighborhood(m(x)) & img)) {
      return Verdict::False;
    }
  }
  return Verdict::True;
}

Verdict quot_def(const ContMap& m, const Kernels&) {
  if (!surjective(m)) return Verdict::False;
  const FinSpace& x = m.domain();
  const FinSpace& y = m.codomain();
  // Smallest quotient-open set around each point; it must be the codomain's N(y).
  for (int q = 0; q < y.size(); ++q) {
    Subset v = Subset::singleton(q);
    while (true) {
      Subset hull;
      m.preimage(v).for_each([&](int p) { hull |= x.neighborhood(p); });
      const Subset grown = v | m.image(hull);
      if (grown == v) break;
      v = grown;
    }
    if (v != y.neighborhood(q)) return Verdict::False;
  }
  return Verdict::True;
}

std::vector<ProcedureInfo> build_registry() {
  using K = ProcedureKind;
  using C = MapClass;
  std::vector<ProcedureInfo> r;
  auto add = [&](std::string id, C c, K kind, bool enumerating, std::string statement, ProcedureFn fn) {
    r.push_back({std::move(id), c, kind, enumerating, std::move(statement), std::move(fn)});
  };
  add("ao-i", C::WeaklyOpen, K::Characterisation, true,
      "int phi(U) nonempty for every open nonempty U", ao_i);
  add("ao-i-basis", C::WeaklyOpen, K::Characterisation, false,
      "int phi(N(x)) nonempty for every minimal neighbourhood", ao_i_basis);
  add("ao-ii-nonempty", C::WeaklyOpen, K::Characterisation, true,
      "every open nonempty U contains an open nonempty W with phi(W) open",
      [](const ContMap& m, const Kernels&) { return ao_ii(m, false); });
  add("ao-ii-dense", C::WeaklyOpen, K::Characterisation, true,
      "every open nonempty U contains an open W dense in U with phi(W) open",
      [](const ContMap& m, const Kernels&) { return ao_ii(m, true); });
  add("ao-iii", C::WeaklyOpen, K::Characterisation, true,
      "preimage of every dense set is dense", ao_iii);

  add("wo-i", C::AlmostOpen, K::Characterisation, true,
      "int cl phi(U) nonempty for every open nonempty U", wo_i);
  add("wo-i-basis", C::AlmostOpen, K::Characterisation, false,
      "int cl phi(N(x)) nonempty for every minimal neighbourhood", wo_i_basis);
  add("wo-ii", C::AlmostOpen, K::Characterisation, true,
      "int phi^-1(cl V) is inside cl phi^-1(V) for every open V", wo_ii);
  add("wo-iii", C::AlmostOpen, K::Characterisation, true,
      "preimage of every open dense set is dense", wo_iii);
  add("wo-iv", C::AlmostOpen, K::Characterisation, true,
      "preimage of every nowhere dense set is nowhere dense",
      [](const ContMap& m, const Kernels&) { return wo_iv(m, false); });
  add("wo-iv-closed", C::AlmostOpen, K::Characterisation, true,
      "preimage of every closed nowhere dense set is nowhere dense",
      [](const ContMap& m, const Kernels&) { return wo_iv(m, true); });
  add("wo-v", C::AlmostOpen, K::Characterisation, true,
      "cl phi(U) is canonically closed for every open U",
      [](const ContMap& m, const Kernels&) { return wo_v(m, false); });
  add("wo-v-canonical", C::AlmostOpen, K::Characterisation, true,
      "cl phi(U) is canonically closed for every canonically closed U",
      [](const ContMap& m, const Kernels&) { return wo_v(m, true); });
  add("wo-vi", C::AlmostOpen, K::Characterisation, true,
      "restriction to every dense subset is almost open",
      [](const ContMap& m, const Kernels&) { return wo_vi(m, true); });
  add("wo-vi-some", C::AlmostOpen, K::Characterisation, true,
      "restriction to some dense subset is almost open",
      [](const ContMap& m, const Kernels&) { return wo_vi(m, false); });

  add("skel-def", C::Skeletal, K::Characterisation, false,
      "almost open onto the image (subspace topology)", skel_def);
  add("sskel-def", C::StronglySkeletal, K::Characterisation, false,
      "weakly open onto the image (subspace topology)", sskel_def);

  add("irr-i", C::Irreducible, K::Characterisation, true,
      "no closed proper A has phi(X) inside cl phi(A)", irr_i);
  add("irr-i-basis", C::Irreducible, K::Characterisation, false,
      "no maximal proper closed set X minus N(x) has phi(X) inside its image closure", irr_i_basis);
  add("irr-ii", C::Irreducible, K::Characterisation, true,
      "every open nonempty U contains phi^-1(V) nonempty for some open V",
      [](const ContMap& m, const Kernels&) { return irr_ii(m, false); });
  add("irr-ii-dense", C::Irreducible, K::Characterisation, true,
      "every open nonempty U contains phi^-1(V) dense in U for some open V",
      [](const ContMap& m, const Kernels&) { return irr_ii(m, true); });
  add("irr-iii", C::Irreducible, K::Characterisation, true,
      "strongly skeletal and weakly injective", irr_iii);
  add("irr-iv", C::Irreducible, K::Characterisation, true,
      "strongly skeletal and phi^-1(phi(A)) not dense for every closed proper A", irr_iv);
  add("mirr-i", C::Irreducible, K::Characterisation, true,
      "for closed maps: phi^-1(phi(A)) is not X for every closed proper A", mirr_i);
  add("mirr-ii", C::Irreducible, K::Consequence, true,
      "closed and almost injective maps are irreducible", mirr_ii);

  add("wi-def", C::WeaklyInjective, K::Characterisation, true,
      "every open nonempty U contains an open nonempty saturated subset", wi_def);
  add("wi-def-basis", C::WeaklyInjective, K::Characterisation, false,
      "every minimal neighbourhood has a nonempty largest open saturated subset", wi_def_basis);
  add("wi-i", C::WeaklyInjective, K::Characterisation, true,
      "every open nonempty U contains an open saturated W dense in U", wi_i);
  add("wi-ii", C::WeaklyInjective, K::Consequence, true,
      "if weakly injective: phi^-1(phi(A)) minus cl A is nowhere dense", wi_ii);
  add("wi-iii", C::WeaklyInjective, K::Consequence, true,
      "if weakly injective: nowhere dense A has phi(A) with empty interior in phi(X)", wi_iii);

  add("ai-def", C::AlmostInjective, K::Characterisation, false,
      "points with singleton fiber are dense", ai_def);
  add("mirr-iii", C::AlmostInjective, K::Consequence, false,
      "weakly injective maps on discrete (finite metrizable) domains are almost injective",
      mirr_iii);

  add("open-def", C::OpenMap, K::Characterisation, false, "images of open sets are open", open_def);
  add("closed-def", C::ClosedMap, K::Characterisation, false, "images of closed sets are closed",
      closed_def);
  add("embed-def", C::Embedding, K::Characterisation, false, "homeomorphism onto the image",
      embed_def);
  add("quot-def", C::QuotientMap, K::Characterisation, false,
      "surjective and V is open exactly when phi^-1(V) is", quot_def);
  add("surj", C::Surjective, K::Characterisation, false, "onto the codomain",
      [](const ContMap& m, const Kernels&) { return verdict(surjective(m)); });
  add("inj", C::Injective, K::Characterisation, false, "one to one",
      [](const ContMap& m, const Kernels&) { return verdict(injective(m)); });
  return r;
}

}  // namespace

std::string_view to_string(MapClass c) { return kClassNames[static_cast<std::size_t>(c)]; }

std::optional<MapClass> map_class_from_string(std::string_view name) {
  for (std::size_t i = 0; i < kClassNames.size(); ++i) {
    if (kClassNames[i] == name) return static_cast<MapClass>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::False: return "false";
    case Verdict::True: return "true";
    case Verdict::NotApplicable: return "n/a";
  }
  return "?";
}

const std::vector<ProcedureInfo>& procedure_registry() {
  static const std::vector<ProcedureInfo> registry = build_registry();
  return registry;
}

const ProcedureInfo& find_procedure(std::string_view id) {
  for (const ProcedureInfo& p : procedure_registry()) {
    if (p.id == id) return p;
  }
  throw ValidationError("unknown procedure id '" + std::string(id) + "'");
}

Kernels& Kernels::override_procedure(std::string id, ProcedureFn fn) {
  find_procedure(id);
  overrides_.emplace_back(std::move(id), std::move(fn));
  return *this;
}

const ProcedureFn* Kernels::override_for(std::string_view id) const {
  for (const auto& [name, fn] : overrides_) {
    if (name == id) return &fn;
  }
  return nullptr;
}

const Kernels& reference_kernels() {
  static const Kernels k;
  return k;
}

Verdict decide_by(const ContMap& map, std::string_view id, const Kernels& kernels) {
  const ProcedureInfo& p = find_procedure(id);
  if (const ProcedureFn* fn = kernels.override_for(id)) return (*fn)(map, kernels);
  return p.fn(map, kernels);
}

Verdict decide_by(const ContMap& map, MapClass target, std::string_view id, const Kernels& kernels) {
  const ProcedureInfo& p = find_procedure(id);
  if (p.target != target) {
    throw ValidationError("procedure '" + std::string(id) + "' decides " +
                          std::string(to_string(p.target)) + ", not " +
                          std::string(to_string(target)));
  }
  return decide_by(map, id, kernels);
}

Subset largest_open_saturated(const ContMap& map, Subset u, const Kernels& kernels) {
  Subset w = u;
  while (true) {
    Subset next = map.domain().interior(w);
    Subset kept;
    next.for_each([&](int x) {
      if (next.contains(kernels.saturation(map, Subset::singleton(x)))) kept.insert(x);
    });
    if (kept == w) return w;
    w = kept;
  }
}

MapClassification classify_map(const ContMap& map, const Kernels& kernels) {
  static constexpr std::array<std::string_view, kMapClassCount> designated = {
      "ao-i-basis", "wo-i-basis", "skel-def",   "sskel-def", "irr-i-basis", "wi-def-basis", "ai-def",
      "open-def",   "closed-def", "embed-def", "quot-def",  "surj",        "inj"};
  MapClassification out;
  for (std::size_t i = 0; i < kMapClassCount; ++i) {
    out.flags[i].procedure = std::string(designated[i]);
    out.flags[i].value = decide_by(map, designated[i], kernels) == Verdict::True;
  }
  return out;
}

}  // namespace fintop
