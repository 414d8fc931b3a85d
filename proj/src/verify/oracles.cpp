#include "fintop/oracles.hpp"

#include <algorithm>
#include <numeric>

#include "fintop/error.hpp"

namespace fintop::oracles {

namespace {

std::size_t at(int x) { return static_cast<std::size_t>(x); }

std::int64_t checked(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw LimitError("oracle arithmetic overflow");
  return static_cast<std::int64_t>(v);
}

void make_primitive(IntVector& v) {
  std::int64_t g = 0;
  for (std::int64_t x : v) g = std::gcd(g, x < 0 ? -x : x);
  if (g > 1) {
    for (std::int64_t& x : v) x /= g;
  }
}

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
}

// row := p * row - q * pivot_row
void eliminate(IntVector& row, const IntVector& pivot_row, int col) {
  const std::int64_t p = pivot_row[at(col)];
  const std::int64_t q = row[at(col)];
  if (q == 0) return;
  for (std::size_t i = 0; i < row.size(); ++i) {
    row[i] = checked(static_cast<__int128>(p) * row[i] - static_cast<__int128>(q) * pivot_row[i]);
  }
  make_primitive(row);
}

}  // namespace

std::vector<IntVector> row_space(std::vector<IntVector> rows, int n) {
  std::vector<IntVector> out;
  int col = 0;
  std::size_t next = 0;
  for (; col < n && next < rows.size(); ++col) {
    std::size_t piv = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r][at(col)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv == rows.size()) continue;
    std::swap(rows[next], rows[piv]);
    if (rows[next][at(col)] < 0) {
      for (std::int64_t& x : rows[next]) x = -x;
    }
    make_primitive(rows[next]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != next) eliminate(rows[r], rows[next], col);
    }
    ++next;
  }
  for (std::size_t r = 0; r < next; ++r) {
    IntVector v = rows[r];
    const auto lead = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (lead != v.end() && *lead < 0) {
      for (std::int64_t& x : v) x = -x;
    }
    make_primitive(v);
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<IntVector> vanishing_on(const std::vector<IntVector>& basis, int n, Subset w) {
  std::vector<IntVector> rows = basis;
  std::size_t next = 0;
  for (int col = 0; col < n; ++col) {
    if (!w.contains(col)) continue;
    std::size_t piv = rows.size();
    for (std::size_t r = next; r < rows.size(); ++r) {
      if (rows[r][at(col)] != 0) {
        piv = r;
        break;
      }
    }
    if (piv == rows.size()) continue;
    std::swap(rows[next], rows[piv]);
    for (std::size_t r = next + 1; r < rows.size(); ++r) eliminate(rows[r], rows[next], col);
    ++next;
  }
  std::vector<IntVector> kernel(rows.begin() + static_cast<std::ptrdiff_t>(next), rows.end());
  kernel.erase(std::remove_if(kernel.begin(), kernel.end(), is_zero), kernel.end());
  return row_space(std::move(kernel), n);
}

std::vector<IntVector> lattice_closure(int n, const std::vector<IntVector>& generators) {
  std::vector<IntVector> s = row_space(generators, n);
  const Subset all = Subset::full(n);
  while (true) {
    std::vector<IntVector> grown = s;
    for (Subset z : subsets_of(all)) {
      const std::vector<IntVector> sz = vanishing_on(s, n, z);
      if (sz.empty()) continue;
      // Extreme rays of every sign cell of sz lie on its one-dimensional
      // coordinate sections.
      std::vector<IntVector> rays;
      for (Subset w : subsets_of(all)) {
        if (!w.contains(z)) continue;
        const std::vector<IntVector> line = vanishing_on(sz, n, w);
        if (line.size() != 1) continue;
        rays.push_back(line[0]);
        IntVector neg = line[0];
        for (std::int64_t& x : neg) x = -x;
        rays.push_back(std::move(neg));
      }
      const Subset nz = z.complement(n);
      const std::vector<int> free_pts = nz.points();
      for (std::uint32_t mask = 0; mask < (1u << free_pts.size()); ++mask) {
        // sign +1 where the bit is clear, -1 where set
        auto sign = [&](std::size_t i) { return ((mask >> i) & 1) ? -1 : 1; };
        IntVector sum(at(n), 0);
        for (const IntVector& r : rays) {
          bool conformal = true;
          for (std::size_t i = 0; i < free_pts.size(); ++i) {
            if (sign(i) * r[at(free_pts[i])] < 0) conformal = false;
          }
          if (!conformal) continue;
          for (int c = 0; c < n; ++c) sum[at(c)] = checked(static_cast<__int128>(sum[at(c)]) + r[at(c)]);
        }
        bool realised = true;
        for (std::size_t i = 0; i < free_pts.size(); ++i) {
          if (sign(i) * sum[at(free_pts[i])] <= 0) realised = false;
        }
        if (!realised) continue;
        // |f| = D f on this cell, and the cell spans sz.
        for (const IntVector& b : sz) {
          IntVector d = b;
          for (std::size_t i = 0; i < free_pts.size(); ++i) d[at(free_pts[i])] *= sign(i);
          grown.push_back(std::move(d));
        }
      }
    }
    std::vector<IntVector> next = row_space(std::move(grown), n);
    if (next.size() == s.size()) return next;
    s = std::move(next);
  }
}

IntVector to_int_vector(const RationalVector& v) {
  mpz_class l = 1;
  for (const Rational& q : v) l = lcm(l, q.get_den());
  IntVector out;
  for (const Rational& q : v) {
    const mpz_class x = q.get_num() * (l / q.get_den());
    if (!x.fits_slong_p()) throw LimitError("oracle input too large");
    out.push_back(x.get_si());
  }
  return out;
}

RationalVector to_rational_vector(const IntVector& v) {
  RationalVector out;
  for (std::int64_t x : v) out.emplace_back(static_cast<long>(x));
  return out;
}

bool same_solution_set(const ConstraintSystem& cs, const std::vector<IntVector>& basis) {
  if (cs.dimension() != static_cast<int>(basis.size())) return false;
  for (const IntVector& v : basis) {
    if (!member(cs, to_rational_vector(v))) return false;
  }
  return true;
}

std::size_t LatticeClosureCache::KeyHash::operator()(const IntVector& k) const noexcept {
  std::size_t h = 1469598103934665603ULL;
  for (std::int64_t x : k) h = (h ^ static_cast<std::size_t>(x)) * 1099511628211ULL;
  return h;
}

const std::vector<IntVector>& LatticeClosureCache::closure(int n, const std::vector<IntVector>& generators) {
  const std::vector<IntVector> span = row_space(generators, n);
  IntVector key{n};
  for (const IntVector& r : span) key.insert(key.end(), r.begin(), r.end());
  auto it = cache_.find(key);
  if (it == cache_.end()) it = cache_.emplace(std::move(key), lattice_closure(n, span)).first;
  return it->second;
}

std::vector<std::vector<Subset>> topologies_by_brute_force(int n) {
  if (n < 1 || n > 4) throw LimitError("brute-force topology oracle needs 1 <= n <= 4");
  const int total = 1 << n;
  const int m = total - 2;
  std::vector<std::vector<Subset>> out;
  for (long f = 0; f < (1L << m); ++f) {
    auto in = [&](int s) { return s == 0 || s == total - 1 || ((f >> (s - 1)) & 1) != 0; };
    bool ok = true;
    for (int a = 1; a < total - 1 && ok; ++a) {
      if (!in(a)) continue;
      for (int b = 1; b < total - 1; ++b) {
        if (in(b) && (!in(a | b) || !in(a & b))) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::vector<Subset> opens;
    for (int s = 0; s < total; ++s) {
      if (in(s)) opens.emplace_back(static_cast<Subset::Word>(s));
    }
    out.push_back(std::move(opens));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> union_find_labels(int n, const std::vector<std::pair<int, int>>& merges) {
  std::vector<int> parent(at(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[at(x)] != x) x = parent[at(x)];
    return x;
  };
  for (auto [a, b] : merges) {
    const int ra = find(a);
    const int rb = find(b);
    if (ra != rb) parent[at(std::max(ra, rb))] = std::min(ra, rb);
  }
  std::vector<int> labels(at(n));
  for (int x = 0; x < n; ++x) labels[at(x)] = find(x);
  return labels;
}

}  // namespace fintop::oracles
