#include "fintop/finspace.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>

#include "fintop/error.hpp"

namespace fintop {

namespace {

void check_point_count(int n) {
  if (n < 0 || n > kSubsetCapacity) {
    throw LimitError("point count " + std::to_string(n) + " outside 0.." +
                     std::to_string(kSubsetCapacity));
  }
}

}  // namespace

FinSpace FinSpace::from_opens(int n, std::vector<Subset> opens) {
  check_point_count(n);
  const Subset all = Subset::full(n);
  for (Subset u : opens) {
    if (!all.contains(u)) {
      throw ValidationError("open set " + u.to_string() + " is not a subset of the points");
    }
  }
  std::sort(opens.begin(), opens.end());
  opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
  auto present = [&](Subset s) { return std::binary_search(opens.begin(), opens.end(), s); };
  if (!present(Subset{})) throw ValidationError("empty set is not open");
  if (!present(all)) throw ValidationError("full set " + all.to_string() + " is not open");
  for (std::size_t i = 0; i < opens.size(); ++i) {
    for (std::size_t j = i + 1; j < opens.size(); ++j) {
      if (!present(opens[i] | opens[j])) {
        throw ValidationError("union " + (opens[i] | opens[j]).to_string() + " of " +
                              opens[i].to_string() + " and " + opens[j].to_string() +
                              " is not open");
      }
      if (!present(opens[i] & opens[j])) {
        throw ValidationError("intersection " + (opens[i] & opens[j]).to_string() + " of " +
                              opens[i].to_string() + " and " + opens[j].to_string() +
                              " is not open");
      }
    }
  }
  FinSpace space;
  space.n_ = n;
  space.nbhd_.assign(static_cast<std::size_t>(n), all);
  for (Subset u : opens) {
    u.for_each([&](int x) { space.nbhd_[static_cast<std::size_t>(x)] &= u; });
  }
  if (n <= kMaxEnumerablePoints) space.opens_ = std::move(opens);
  return space;
}

FinSpace FinSpace::from_neighborhoods(std::vector<Subset> neighborhoods) {
  const int n = static_cast<int>(neighborhoods.size());
  check_point_count(n);
  const Subset all = Subset::full(n);
  for (int x = 0; x < n; ++x) {
    const Subset nx = neighborhoods[static_cast<std::size_t>(x)];
    if (!all.contains(nx) || !nx.contains(x)) {
      throw ValidationError("neighbourhood of point " + std::to_string(x) + " must contain it");
    }
    nx.for_each([&](int y) {
      if (!nx.contains(neighborhoods[static_cast<std::size_t>(y)])) {
        throw ValidationError("neighbourhoods are not transitive at points " + std::to_string(x) +
                              ", " + std::to_string(y));
      }
    });
  }
  FinSpace space;
  space.n_ = n;
  space.nbhd_ = std::move(neighborhoods);
  space.materialise_opens();
  return space;
}

FinSpace FinSpace::generated_by(int n, const std::vector<Subset>& subbasis) {
  check_point_count(n);
  const Subset all = Subset::full(n);
  std::vector<Subset> nbhd(static_cast<std::size_t>(n), all);
  for (Subset s : subbasis) {
    if (!all.contains(s)) throw ValidationError("subbasis member " + s.to_string() + " out of range");
    s.for_each([&](int x) { nbhd[static_cast<std::size_t>(x)] &= s; });
  }
  FinSpace space;
  space.n_ = n;
  space.nbhd_ = std::move(nbhd);
  space.materialise_opens();
  return space;
}

FinSpace FinSpace::discrete(int n) {
  check_point_count(n);
  std::vector<Subset> nbhd;
  for (int x = 0; x < n; ++x) nbhd.push_back(Subset::singleton(x));
  return from_neighborhoods(std::move(nbhd));
}

FinSpace FinSpace::indiscrete(int n) {
  check_point_count(n);
  return from_neighborhoods(std::vector<Subset>(static_cast<std::size_t>(n), Subset::full(n)));
}

void FinSpace::materialise_opens() {
  opens_.clear();
  if (n_ > kMaxEnumerablePoints) return;
  // Every open set is a union of minimal neighbourhoods.
  std::unordered_set<Subset, SubsetHash> seen{Subset{}};
  std::vector<Subset> frontier{Subset{}};
  for (Subset nx : nbhd_) {
    const std::size_t count = frontier.size();
    for (std::size_t i = 0; i < count; ++i) {
      const Subset u = frontier[i] | nx;
      if (seen.insert(u).second) frontier.push_back(u);
    }
  }
  opens_ = std::move(frontier);
  std::sort(opens_.begin(), opens_.end());
}

const std::vector<Subset>& FinSpace::opens() const {
  if (!enumerable()) {
    throw LimitError("space with " + std::to_string(n_) + " points exceeds the enumeration limit " +
                     std::to_string(kMaxEnumerablePoints));
  }
  return opens_;
}

std::vector<Subset> FinSpace::closed_sets() const {
  std::vector<Subset> out;
  for (Subset u : opens()) out.push_back(u.complement(n_));
  std::sort(out.begin(), out.end());
  return out;
}

bool FinSpace::is_discrete() const {
  for (int x = 0; x < n_; ++x) {
    if (nbhd_[static_cast<std::size_t>(x)] != Subset::singleton(x)) return false;
  }
  return true;
}

bool FinSpace::is_t0() const {
  for (int x = 0; x < n_; ++x) {
    for (int y = x + 1; y < n_; ++y) {
      if (nbhd_[static_cast<std::size_t>(x)] == nbhd_[static_cast<std::size_t>(y)]) return false;
    }
  }
  return true;
}

Subset FinSpace::closure(Subset a) const {
  Subset out;
  for (int x = 0; x < n_; ++x) {
    if (nbhd_[static_cast<std::size_t>(x)].intersects(a)) out.insert(x);
  }
  return out;
}

Subset FinSpace::interior(Subset a) const {
  Subset out;
  for (int x = 0; x < n_; ++x) {
    if (a.contains(nbhd_[static_cast<std::size_t>(x)])) out.insert(x);
  }
  return out;
}

bool is_dense(const FinSpace& space, Subset a) { return space.closure(a) == space.points(); }

bool is_nowhere_dense(const FinSpace& space, Subset a) {
  return space.interior(space.closure(a)).empty();
}

bool is_canonically_closed(const FinSpace& space, Subset a) {
  return space.is_closed(a) && space.closure(space.interior(a)) == a;
}

SubsetProps classify_subset(const FinSpace& space, Subset a) {
  SubsetProps p;
  const Subset cl = space.closure(a);
  const Subset in = space.interior(a);
  p.closed = cl == a;
  p.dense = cl == space.points();
  p.nowhere_dense = space.interior(cl).empty();
  p.canonically_closed = p.closed && space.closure(in) == a;
  p.canonically_open = in == a && space.interior(cl) == a;
  p.clopen = p.closed && in == a;
  return p;
}

Subset Subspace::to_local(Subset parent_subset) const {
  Subset out;
  for (std::size_t i = 0; i < to_parent.size(); ++i) {
    if (parent_subset.contains(to_parent[i])) out.insert(static_cast<int>(i));
  }
  return out;
}

Subset Subspace::to_parent_subset(Subset local) const {
  Subset out;
  local.for_each([&](int i) { out.insert(to_parent[static_cast<std::size_t>(i)]); });
  return out;
}

Subspace subspace(const FinSpace& space, Subset a) {
  a &= space.points();
  if (a.empty()) throw ValidationError("subspace of the empty set");
  Subspace sub;
  sub.to_parent = a.points();
  std::vector<Subset> nbhd;
  nbhd.reserve(sub.to_parent.size());
  for (int p : sub.to_parent) nbhd.push_back(sub.to_local(space.neighborhood(p) & a));
  sub.space = FinSpace::from_neighborhoods(std::move(nbhd));
  return sub;
}

bool topology_less(const FinSpace& a, const FinSpace& b) {
  return std::lexicographical_compare(a.opens().begin(), a.opens().end(), b.opens().begin(),
                                      b.opens().end());
}

// ---------------------------------------------------------------------------

namespace {

void check_enumeration_limits(int n, EnumerationStrategy strategy, const EnumerationLimits& limits) {
  if (n < 1) throw ValidationError("topology enumeration needs at least one point");
  if (n > limits.max_points) {
    throw LimitError("enumeration of topologies on " + std::to_string(n) +
                     " points exceeds the configured limit " + std::to_string(limits.max_points));
  }
  if (strategy == EnumerationStrategy::FamilyFilter && n > limits.max_filter_points) {
    throw LimitError("family filter enumeration on " + std::to_string(n) +
                     " points exceeds the configured limit " +
                     std::to_string(limits.max_filter_points));
  }
  if (n > 6) throw LimitError("topology enumeration is implemented for at most 6 points");
}

std::vector<FinSpace> by_family_filter(int n) {
  const int total = 1 << n;
  // Candidate members: every subset except the empty and the full set.
  std::vector<std::uint32_t> middle;
  for (int s = 1; s + 1 < total; ++s) middle.push_back(static_cast<std::uint32_t>(s));
  const std::uint64_t families = std::uint64_t{1} << middle.size();
  std::vector<FinSpace> out;
  std::vector<bool> member(static_cast<std::size_t>(total));
  for (std::uint64_t f = 0; f < families; ++f) {
    std::fill(member.begin(), member.end(), false);
    member[0] = true;
    member[static_cast<std::size_t>(total - 1)] = true;
    std::vector<std::uint32_t> chosen;
    for (std::size_t i = 0; i < middle.size(); ++i) {
      if ((f >> i) & 1) {
        member[middle[i]] = true;
        chosen.push_back(middle[i]);
      }
    }
    bool closed = true;
    for (std::size_t i = 0; i < chosen.size() && closed; ++i) {
      for (std::size_t j = i + 1; j < chosen.size(); ++j) {
        if (!member[chosen[i] | chosen[j]] || !member[chosen[i] & chosen[j]]) {
          closed = false;
          break;
        }
      }
    }
    if (!closed) continue;
    std::vector<Subset> opens{Subset{}, Subset::full(n)};
    for (std::uint32_t s : chosen) opens.emplace_back(Subset::Word{s});
    out.push_back(FinSpace::from_opens(n, std::move(opens)));
  }
  return out;
}

std::vector<FinSpace> by_preorder(int n) {
  // up[x] is the minimal neighbourhood of x: the points above x in the
  // specialisation preorder. Each is chosen among the supersets of {x}.
  std::vector<std::vector<std::uint32_t>> choices(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) {
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
      if ((s >> x) & 1) choices[static_cast<std::size_t>(x)].push_back(s);
    }
  }
  std::vector<FinSpace> out;
  std::vector<std::uint32_t> up(static_cast<std::size_t>(n));
  std::vector<std::size_t> idx(static_cast<std::size_t>(n), 0);
  while (true) {
    for (int x = 0; x < n; ++x) up[static_cast<std::size_t>(x)] = choices[static_cast<std::size_t>(x)][idx[static_cast<std::size_t>(x)]];
    bool transitive = true;
    for (int x = 0; x < n && transitive; ++x) {
      const std::uint32_t ux = up[static_cast<std::size_t>(x)];
      for (int y = 0; y < n; ++y) {
        if (((ux >> y) & 1) && (up[static_cast<std::size_t>(y)] & ~ux) != 0) {
          transitive = false;
          break;
        }
      }
    }
    if (transitive) {
      std::vector<Subset> nbhd;
      for (std::uint32_t u : up) nbhd.emplace_back(Subset::Word{u});
      out.push_back(FinSpace::from_neighborhoods(std::move(nbhd)));
    }
    int pos = 0;
    while (pos < n) {
      auto& i = idx[static_cast<std::size_t>(pos)];
      if (++i < choices[static_cast<std::size_t>(pos)].size()) break;
      i = 0;
      ++pos;
    }
    if (pos == n) break;
  }
  return out;
}

}  // namespace

std::vector<FinSpace> enumerate_topologies(int n, EnumerationStrategy strategy,
                                           const EnumerationLimits& limits) {
  check_enumeration_limits(n, strategy, limits);
  std::vector<FinSpace> out =
      strategy == EnumerationStrategy::FamilyFilter ? by_family_filter(n) : by_preorder(n);
  std::sort(out.begin(), out.end(), topology_less);
  return out;
}

void for_each_topology(int n, const std::function<bool(const FinSpace&)>& fn,
                       EnumerationStrategy strategy, const EnumerationLimits& limits) {
  for (const FinSpace& s : enumerate_topologies(n, strategy, limits)) {
    if (!fn(s)) return;
  }
}

std::vector<Subset> homeomorphism_key(const FinSpace& space) {
  const int n = space.size();
  if (n > 8) throw LimitError("homeomorphism key is limited to 8 points");
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<Subset> best;
  do {
    std::vector<Subset> mapped;
    for (Subset u : space.opens()) {
      Subset v;
      u.for_each([&](int x) { v.insert(perm[static_cast<std::size_t>(x)]); });
      mapped.push_back(v);
    }
    std::sort(mapped.begin(), mapped.end());
    if (best.empty() || mapped < best) best = std::move(mapped);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace fintop
