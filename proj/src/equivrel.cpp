#include "fintop/equivrel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

#include "fintop/error.hpp"

namespace fintop {

EquivRel EquivRel::from_blocks(FinSpace space, const std::vector<Subset>& blocks) {
  Subset seen;
  for (Subset b : blocks) {
    if (b.empty()) throw ValidationError("relation has an empty block");
    if (!space.points().contains(b)) throw ValidationError("block " + b.to_string() + " out of range");
    if (seen.intersects(b)) throw ValidationError("block " + b.to_string() + " overlaps another block");
    seen |= b;
  }
  if (seen != space.points()) {
    throw ValidationError("blocks miss points " + (space.points() - seen).to_string());
  }
  EquivRel r;
  r.blocks_ = blocks;
  std::sort(r.blocks_.begin(), r.blocks_.end(),
            [](Subset a, Subset b) { return a.lowest() < b.lowest(); });
  r.block_of_.assign(static_cast<std::size_t>(space.size()), 0);
  for (std::size_t i = 0; i < r.blocks_.size(); ++i) {
    r.blocks_[i].for_each([&](int x) { r.block_of_[static_cast<std::size_t>(x)] = static_cast<int>(i); });
  }
  r.space_ = std::move(space);
  return r;
}

EquivRel EquivRel::from_labels(FinSpace space, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != space.size()) {
    throw ValidationError("label count does not match the space");
  }
  std::map<int, Subset> groups;
  for (std::size_t x = 0; x < labels.size(); ++x) groups[labels[x]].insert(static_cast<int>(x));
  std::vector<Subset> blocks;
  for (const auto& [label, b] : groups) blocks.push_back(b);
  return from_blocks(std::move(space), blocks);
}

EquivRel EquivRel::identity(FinSpace space) {
  std::vector<Subset> blocks;
  for (int x = 0; x < space.size(); ++x) blocks.push_back(Subset::singleton(x));
  return from_blocks(std::move(space), blocks);
}

EquivRel EquivRel::all_in_one(FinSpace space) {
  const Subset all = space.points();
  return from_blocks(std::move(space), all.empty() ? std::vector<Subset>{} : std::vector<Subset>{all});
}

Subset EquivRel::saturation(Subset a) const {
  Subset out;
  a.for_each([&](int x) { out |= blocks_[static_cast<std::size_t>(block_of(x))]; });
  return out;
}

bool EquivRel::coarsens(const EquivRel& finer) const {
  for (Subset b : finer.blocks()) {
    if (!blocks_[static_cast<std::size_t>(block_of(b.lowest()))].contains(b)) return false;
  }
  return true;
}

bool is_closed_relation(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  for (int x = 0; x < s.size(); ++x) {
    if (!s.is_closed(rel.saturation(s.closure(Subset::singleton(x))))) return false;
  }
  return true;
}

bool is_closed_relation_literal(const EquivRel& rel) {
  for (Subset a : rel.space().closed_sets()) {
    if (!rel.space().is_closed(rel.saturation(a))) return false;
  }
  return true;
}

bool is_closed_relation_via_quotient(const EquivRel& rel) {
  return decide_by(quotient(rel).projection, MapClass::ClosedMap, "closed-def") == Verdict::True;
}

Quotient quotient(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  const int k = rel.block_count();
  std::vector<Subset> nbhd;
  nbhd.reserve(static_cast<std::size_t>(k));
  for (int b = 0; b < k; ++b) {
    // Grow the block set until the union of its blocks is open.
    Subset chosen = Subset::singleton(b);
    while (true) {
      Subset hull;
      chosen.for_each([&](int c) {
        rel.blocks()[static_cast<std::size_t>(c)].for_each([&](int x) { hull |= s.neighborhood(x); });
      });
      Subset grown = chosen;
      hull.for_each([&](int x) { grown.insert(rel.block_of(x)); });
      if (grown == chosen) break;
      chosen = grown;
    }
    nbhd.push_back(chosen);
  }
  Quotient q;
  q.space = FinSpace::from_neighborhoods(std::move(nbhd));
  q.projection = make_map_unchecked(s, q.space, rel.labels());
  return q;
}

namespace {

void require_same_space(const EquivRel& a, const EquivRel& b) {
  if (!(a.space() == b.space())) throw ValidationError("relations live on different spaces");
}

struct DisjointSets {
  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
  std::vector<int> parent;
};

// Closed relations above `base`, obtained by merging blocks of `base` along
// every partition of its block indices. Keeps only the minimal ones.
JoinResult search_coarsenings(const EquivRel& base, int max_blocks) {
  const int k = base.block_count();
  if (k > max_blocks) {
    throw LimitError("closed join search over " + std::to_string(k) + " blocks exceeds the limit " +
                     std::to_string(max_blocks));
  }
  JoinResult out;
  std::vector<EquivRel> closed;
  for_each_partition(k, [&](const std::vector<int>& rgs) {
    std::vector<int> labels(static_cast<std::size_t>(base.space().size()));
    for (int x = 0; x < base.space().size(); ++x) {
      labels[static_cast<std::size_t>(x)] = rgs[static_cast<std::size_t>(base.block_of(x))];
    }
    EquivRel r = EquivRel::from_labels(base.space(), labels);
    if (is_closed_relation(r)) closed.push_back(std::move(r));
  });
  out.closed_candidates = static_cast<long long>(closed.size());
  for (std::size_t i = 0; i < closed.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < closed.size() && minimal; ++j) {
      if (i != j && closed[i].coarsens(closed[j]) && !(closed[i] == closed[j])) minimal = false;
    }
    if (minimal) out.minimal.push_back(closed[i]);
  }
  if (out.minimal.size() == 1) out.join = out.minimal.front();
  return out;
}

}  // namespace

EquivRel meet(const EquivRel& a, const EquivRel& b) {
  require_same_space(a, b);
  std::vector<int> labels(static_cast<std::size_t>(a.space().size()));
  for (int x = 0; x < a.space().size(); ++x) {
    labels[static_cast<std::size_t>(x)] = a.block_of(x) * (b.block_count() + 1) + b.block_of(x);
  }
  return EquivRel::from_labels(a.space(), labels);
}

EquivRel join(const EquivRel& a, const EquivRel& b) {
  require_same_space(a, b);
  const int n = a.space().size();
  DisjointSets ds(n);
  for (const EquivRel* r : {&a, &b}) {
    for (Subset blk : r->blocks()) {
      const int root = blk.lowest();
      blk.for_each([&](int x) { ds.unite(root, x); });
    }
  }
  std::vector<int> labels(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) labels[static_cast<std::size_t>(x)] = ds.find(x);
  return EquivRel::from_labels(a.space(), labels);
}

JoinResult join_closed(const EquivRel& a, const EquivRel& b, int max_blocks) {
  EquivRel t = join(a, b);
  // Every closed relation above a and b contains t, so a closed t is the least.
  if (is_closed_relation(t)) {
    JoinResult out;
    out.minimal.push_back(t);
    out.join = std::move(t);
    return out;
  }
  return search_coarsenings(t, max_blocks);
}

JoinResult join_closed_exhaustive(const EquivRel& a, const EquivRel& b, int max_points) {
  require_same_space(a, b);
  const int n = a.space().size();
  if (n > max_points) {
    throw LimitError("exhaustive partition search on " + std::to_string(n) + " points exceeds " +
                     std::to_string(max_points));
  }
  JoinResult out;
  std::vector<EquivRel> closed;
  for_each_partition(n, [&](const std::vector<int>& rgs) {
    EquivRel r = EquivRel::from_labels(a.space(), rgs);
    if (r.coarsens(a) && r.coarsens(b) && is_closed_relation_literal(r)) closed.push_back(std::move(r));
  });
  out.closed_candidates = static_cast<long long>(closed.size());
  for (const EquivRel& c : closed) {
    bool minimal = true;
    for (const EquivRel& d : closed) {
      if (c.coarsens(d) && !(c == d)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.minimal.push_back(c);
  }
  if (out.minimal.size() == 1) out.join = out.minimal.front();
  return out;
}

bool eqq_condition_i(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  // Minimal neighbourhoods suffice: any open nonempty U contains one.
  for (int x = 0; x < s.size(); ++x) {
    const Subset u = s.neighborhood(x);
    // The saturation of A is the union of the blocks A meets; any nonempty
    // family of blocks meeting U is realised by picking a point of U in each.
    std::vector<Subset> meeting;
    for (Subset b : rel.blocks()) {
      if (b.intersects(u)) meeting.push_back(b);
    }
    if (meeting.size() > 24) throw LimitError("too many blocks meet a neighbourhood");
    bool found = false;
    for (std::uint32_t mask = 1; mask < (1u << meeting.size()) && !found; ++mask) {
      Subset sat;
      for (std::size_t i = 0; i < meeting.size(); ++i) {
        if ((mask >> i) & 1) sat |= meeting[i];
      }
      found = s.is_open(sat);
    }
    if (!found) return false;
  }
  return true;
}

bool eqq_condition_i_literal(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  for (Subset u : s.opens()) {
    if (u.empty()) continue;
    bool found = false;
    for (Subset a : subsets_of(u)) {
      if (!a.empty() && s.is_open(rel.saturation(a))) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

bool eqq_condition_ii(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  for (int x = 0; x < s.size(); ++x) {
    if (rel.saturation(s.neighborhood(x).complement(s.size())) == s.points()) return false;
  }
  return true;
}

bool eqq_condition_ii_literal(const EquivRel& rel) {
  const FinSpace& s = rel.space();
  for (Subset a : s.closed_sets()) {
    if (a != s.points() && rel.saturation(a) == s.points()) return false;
  }
  return true;
}

void for_each_partition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  if (n <= 0) {
    fn({});
    return;
  }
  std::vector<int> rgs(static_cast<std::size_t>(n), 0);
  std::vector<int> maxes(static_cast<std::size_t>(n), 0);
  while (true) {
    fn(rgs);
    int i = n - 1;
    while (i > 0 && rgs[static_cast<std::size_t>(i)] > maxes[static_cast<std::size_t>(i - 1)]) --i;
    if (i == 0) return;
    ++rgs[static_cast<std::size_t>(i)];
    maxes[static_cast<std::size_t>(i)] =
        std::max(maxes[static_cast<std::size_t>(i - 1)], rgs[static_cast<std::size_t>(i)]);
    for (int j = i + 1; j < n; ++j) {
      rgs[static_cast<std::size_t>(j)] = 0;
      maxes[static_cast<std::size_t>(j)] = maxes[static_cast<std::size_t>(i)];
    }
  }
}

}  // namespace fintop
