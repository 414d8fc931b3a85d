#include "fintop/scenarios.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fintop/equivrel.hpp"
#include "fintop/error.hpp"
#include "json.hpp"

namespace fintop::scenarios {

namespace {

std::size_t at(long long i) { return static_cast<std::size_t>(i); }

class DisjointSets {
public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

private:
  std::vector<std::size_t> parent_;
};

// ---------------------------------------------------------------------------
// Cantor points.

char tail_digit(int t) { return t == 0 ? '0' : '1'; }

CantorPoint normalise(std::string s, int tail) {
  while (!s.empty() && s.back() == tail_digit(tail)) s.pop_back();
  return {std::move(s), tail};
}

// psi swaps coordinates (1,2), (3,4), ...; theta swaps (2,3), (4,5), ...
// (1-based). Past the padded prefix both swapped coordinates are tail digits.
CantorPoint swap_coordinates(const CantorPoint& p, bool psi) {
  std::string s = p.word;
  const std::size_t parity = psi ? 0 : 1;
  while (s.size() < p.word.size() + 1 || s.size() % 2 != parity) s.push_back(tail_digit(p.tail));
  for (std::size_t i = psi ? 0 : 1; i + 1 < s.size(); i += 2) std::swap(s[i], s[i + 1]);
  return normalise(std::move(s), p.tail);
}

class Universe {
public:
  explicit Universe(int depth) {
    for (int tail = 0; tail < 2; ++tail) {
      add({"", tail});
      for (int len = 1; len <= depth - 1; ++len) {
        for (long long bits = 0; bits < (1LL << (len - 1)); ++bits) {
          std::string w;
          for (int i = 0; i < len - 1; ++i) w.push_back(((bits >> (len - 2 - i)) & 1) != 0 ? '1' : '0');
          w.push_back(tail_digit(1 - tail));
          add({w, tail});
        }
      }
    }
  }
  long long index(const CantorPoint& p) const {
    const auto it = index_.find(key(p));
    return it == index_.end() ? -1 : it->second;
  }
  const std::vector<CantorPoint>& points() const { return points_; }

private:
  static std::string key(const CantorPoint& p) { return p.word + tail_digit(p.tail); }
  void add(CantorPoint p) {
    index_.emplace(key(p), static_cast<long long>(points_.size()));
    points_.push_back(std::move(p));
  }
  std::vector<CantorPoint> points_;
  std::unordered_map<std::string, long long> index_;
};

void for_each_word(int max_len, const std::function<void(const std::string&)>& fn) {
  for (int len = 0; len <= max_len; ++len) {
    for (long long bits = 0; bits < (1LL << len); ++bits) {
      std::string w;
      for (int i = 0; i < len; ++i) w.push_back(((bits >> (len - 1 - i)) & 1) != 0 ? '1' : '0');
      fn(w);
    }
  }
}

}  // namespace

std::string CantorPoint::to_string() const { return word + "(" + tail_digit(tail) + ")"; }

bool InteroReport::passed() const {
  return !claim_applies || (single_class && oracle_single_class && oracle_refines_join);
}

InteroReport intero_scenario(int depth) {
  if (depth < 2 || depth > kMaxInteroDepth) {
    throw LimitError("depth must be in 2.." + std::to_string(kMaxInteroDepth));
  }
  const Universe u(depth);
  const auto& pts = u.points();
  InteroReport r;
  r.depth = depth;
  r.points = static_cast<long long>(pts.size());
  r.checked_depth = depth - 2;

  DisjointSets join(pts.size());
  // The binary-value relation pairs (w1, 0) with (w0, 1). Source pairs run
  // two digits past the universe so conjugates landing inside are kept.
  for_each_word(depth, [&](const std::string& w) {
    const CantorPoint p{w + "1", 0};
    const CantorPoint q{w + "0", 1};
    const auto add = [&](const CantorPoint& a, const CantorPoint& b, long long& count) {
      const long long ia = u.index(a);
      const long long ib = u.index(b);
      if (ia < 0 || ib < 0) {
        ++r.dropped_edges;
        return;
      }
      join.unite(at(ia), at(ib));
      ++count;
    };
    add(p, q, r.sim_edges);
    add(swap_coordinates(p, true), swap_coordinates(q, true), r.psi_edges);
    add(swap_coordinates(p, false), swap_coordinates(q, false), r.theta_edges);
  });

  // The induction's merge sequence: (A1, 0) ~ (A01, 0) ~ (A11, 0) for every
  // word A, then the binary-value pairs carry the tail-1 points along.
  DisjointSets replay(pts.size());
  std::vector<std::pair<long long, long long>> merges;
  for_each_word(depth, [&](const std::string& a) {
    const long long base = u.index({a + "1", 0});
    for (const char* suffix : {"01", "11"}) {
      const long long other = u.index({a + suffix, 0});
      if (base >= 0 && other >= 0) merges.emplace_back(base, other);
    }
    const long long p = u.index({a + "1", 0});
    const long long q = u.index({a + "0", 1});
    if (p >= 0 && q >= 0) merges.emplace_back(p, q);
  });
  for (auto [a, b] : merges) replay.unite(at(a), at(b));
  r.oracle_refines_join = std::all_of(merges.begin(), merges.end(), [&](const auto& m) {
    return join.find(at(m.first)) == join.find(at(m.second));
  });

  std::set<std::size_t> roots;
  std::set<std::size_t> checked_roots;
  const auto y1 = at(u.index({"1", 0}));
  r.single_class = true;
  r.oracle_single_class = true;
  std::map<std::size_t, long long> class_size;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const std::size_t root = join.find(i);
    roots.insert(root);
    ++class_size[root];
  }
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const CantorPoint& p = pts[i];
    if (static_cast<int>(p.word.size()) > r.checked_depth) continue;
    ++r.checked_points;
    checked_roots.insert(join.find(i));
    if (p.word.empty()) continue;
    if (join.find(i) == join.find(y1)) {
      r.collapsed.insert(p);
    } else {
      r.single_class = false;
    }
    if (replay.find(i) != replay.find(y1)) r.oracle_single_class = false;
  }
  r.classes = static_cast<long long>(roots.size());
  r.checked_classes = static_cast<long long>(checked_roots.size());
  r.claim_applies = depth >= 3;
  if (!r.claim_applies) {
    r.single_class = false;
    r.oracle_single_class = false;
  }
  r.constants_isolated = class_size[join.find(at(u.index({"", 0})))] == 1 &&
                         class_size[join.find(at(u.index({"", 1})))] == 1;
  return r;
}

std::string to_text(const InteroReport& r) {
  std::ostringstream os;
  os << "intero depth=" << r.depth << "\n";
  os << "model: points (w, t) of the Cantor space, w a word of length <= " << r.depth - 1
     << " and t a constant tail; relations are cut to the universe\n";
  os << "points " << r.points << "\n";
  os << "edges binary-value=" << r.sim_edges << " psi-conjugate=" << r.psi_edges << " theta-conjugate=" << r.theta_edges
     << " dropped=" << r.dropped_edges << "\n";
  os << "join classes " << r.classes << "\n";
  os << "checked depth <= " << r.checked_depth << ": " << r.checked_points << " points in " << r.checked_classes
     << " classes\n";
  if (!r.claim_applies) {
    os << "degenerate universe: no nonconstant point at the checked depth, no collapse claim\n";
    return os.str();
  }
  os << "nonconstant checked points joined with 1(0): " << (r.single_class ? "all" : "not all") << " ("
     << r.collapsed.size() << ")\n";
  os << "constant sequences (0) and (1) isolated: " << (r.constants_isolated ? "yes" : "no") << "\n";
  os << "induction replay: " << (r.oracle_single_class ? "single class" : "split") << ", merges contained in join: "
     << (r.oracle_refines_join ? "yes" : "no") << "\n";
  os << (r.passed() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::string to_json(const InteroReport& r) {
  nlohmann::ordered_json collapsed = nlohmann::ordered_json::array();
  for (const auto& p : r.collapsed) collapsed.push_back(p.to_string());
  nlohmann::ordered_json j{{"schema", "fintop-intero-report/1"},
                           {"depth", r.depth},
                           {"points", r.points},
                           {"edges",
                            {{"binary_value", r.sim_edges},
                             {"psi_conjugate", r.psi_edges},
                             {"theta_conjugate", r.theta_edges},
                             {"dropped", r.dropped_edges}}},
                           {"classes", r.classes},
                           {"checked_depth", r.checked_depth},
                           {"checked_points", r.checked_points},
                           {"checked_classes", r.checked_classes},
                           {"claim_applies", r.claim_applies},
                           {"single_class", r.single_class},
                           {"constants_isolated", r.constants_isolated},
                           {"oracle_single_class", r.oracle_single_class},
                           {"oracle_refines_join", r.oracle_refines_join},
                           {"collapsed", collapsed},
                           {"passed", r.passed()}};
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Grid.

namespace {

struct Face {
  std::string name;
  std::vector<int> facets;
};

struct Grid {
  std::vector<Face> faces;
  std::map<std::string, int> index;
  int k = 0;

  int add(std::string name, std::vector<int> facets = {}) {
    const int id = static_cast<int>(faces.size());
    index.emplace(name, id);
    faces.push_back({std::move(name), std::move(facets)});
    return id;
  }
  int operator[](const std::string& name) const { return index.at(name); }
};

std::string coord(const char* kind, int i, int j) {
  return std::string(kind) + "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

std::string coord(const char* kind, int i) { return std::string(kind) + "(" + std::to_string(i) + ")"; }

// v(i,j) vertex at (i,j); h(i,j) edge (i,j)-(i+1,j); e(i,j) edge (i,j)-(i,j+1);
// s(i,j) square [i,i+1]x[j,j+1] off the diagonal; lo(i), up(i) triangles
// below and above the diagonal edge dg(i) of square (i,i); y(i), d(i) the
// hanging segment, d(1) attached at v(0,0).
Grid build_grid(int k) {
  Grid g;
  g.k = k;
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j <= k; ++j) g.add(coord("v", i, j));
  }
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j <= k; ++j) g.add(coord("h", i, j), {g[coord("v", i, j)], g[coord("v", i + 1, j)]});
  }
  for (int i = 0; i <= k; ++i) {
    for (int j = 0; j < k; ++j) g.add(coord("e", i, j), {g[coord("v", i, j)], g[coord("v", i, j + 1)]});
  }
  for (int i = 0; i < k; ++i) g.add(coord("dg", i), {g[coord("v", i, i)], g[coord("v", i + 1, i + 1)]});
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      if (i == j) {
        g.add(coord("lo", i), {g[coord("h", i, i)], g[coord("e", i + 1, i)], g[coord("dg", i)]});
        g.add(coord("up", i), {g[coord("e", i, i)], g[coord("h", i, i + 1)], g[coord("dg", i)]});
      } else {
        g.add(coord("s", i, j),
              {g[coord("h", i, j)], g[coord("h", i, j + 1)], g[coord("e", i, j)], g[coord("e", i + 1, j)]});
      }
    }
  }
  for (int i = 1; i <= k; ++i) g.add(coord("y", i));
  for (int i = 1; i <= k; ++i) {
    const int from = i == 1 ? g[coord("v", 0, 0)] : g[coord("y", i - 1)];
    g.add(coord("d", i), {from, g[coord("y", i)]});
  }
  return g;
}

FinSpace face_space(const Grid& g) {
  const auto n = g.faces.size();
  // Facets are listed before their cofaces, so a reverse sweep closes stars.
  std::vector<Subset> star(n);
  for (std::size_t x = 0; x < n; ++x) star[x] = Subset::singleton(static_cast<int>(x));
  for (std::size_t c = n; c-- > 0;) {
    for (int f : g.faces[c].facets) star[at(f)] |= star[c];
  }
  return FinSpace::from_neighborhoods(star);
}

enum class Axis { Vertical, Horizontal };

// Block names: the line x = i (or y = j) and the open strip beside it.
std::string block_name(const Grid& g, const std::string& face, Axis axis, bool with_diagonal) {
  const char kind = face[0];
  int i = -1;
  int j = -1;
  const auto open = face.find('(');
  const auto comma = face.find(',');
  if (comma != std::string::npos) {
    i = std::stoi(face.substr(open + 1, comma - open - 1));
    j = std::stoi(face.substr(comma + 1));
  } else {
    i = j = std::stoi(face.substr(open + 1));
  }
  const bool vertical = axis == Axis::Vertical;
  const std::string line = vertical ? "x=" : "y=";
  const std::string strip = vertical ? "x in " : "y in ";
  const int along = vertical ? i : j;
  if (face.starts_with("v")) return line + std::to_string(along);
  if (face.starts_with("h")) return vertical ? strip + std::to_string(i) : line + std::to_string(j);
  if (face.starts_with("e")) return vertical ? line + std::to_string(i) : strip + std::to_string(j);
  if (face.starts_with("dg") || face.starts_with("lo") || face.starts_with("up") || kind == 's') {
    return strip + std::to_string(along);
  }
  // The hanging segment: singletons, or glued to the diagonal.
  if (with_diagonal && kind == 'y') return block_name(g, coord("v", i, i), axis, false);
  if (with_diagonal && kind == 'd') return block_name(g, coord("dg", i - 1), axis, false);
  return face;
}

EquivRel collapse(const Grid& g, const FinSpace& space, Axis axis, bool with_diagonal) {
  std::map<std::string, int> ids;
  std::vector<int> labels;
  for (const Face& f : g.faces) {
    const auto name = block_name(g, f.name, axis, with_diagonal);
    labels.push_back(ids.emplace(name, static_cast<int>(ids.size())).first->second);
  }
  return EquivRel::from_labels(space, labels);
}

// Only the segment glued onto the diagonal: y(i) with v(i,i), d(i) with dg(i-1).
EquivRel diagonal_only(const Grid& g, const FinSpace& space) {
  std::vector<int> labels(g.faces.size());
  for (std::size_t x = 0; x < labels.size(); ++x) labels[x] = static_cast<int>(x);
  for (int i = 1; i <= g.k; ++i) {
    labels[at(g[coord("y", i)])] = g[coord("v", i, i)];
    labels[at(g[coord("d", i)])] = g[coord("dg", i - 1)];
  }
  return EquivRel::from_labels(space, labels);
}

GridQuotient classify(std::string name, const EquivRel& rel, std::optional<bool> expected) {
  const Quotient q = quotient(rel);
  const MapClassification c = classify_map(q.projection);
  GridQuotient out;
  out.name = std::move(name);
  out.blocks = rel.block_count();
  out.closed_relation = is_closed_relation(rel);
  out.skeletal = c.is(MapClass::Skeletal);
  out.almost_open = c.is(MapClass::AlmostOpen);
  out.skeletal_procedure = c[MapClass::Skeletal].procedure;
  out.expected_skeletal = expected;
  return out;
}

}  // namespace

GridModel grid_model(int k) {
  if (k < 1 || k > kMaxGridSize) throw LimitError("k must be in 1.." + std::to_string(kMaxGridSize));
  const Grid g = build_grid(k);
  GridModel m{k, face_space(g), {}};
  for (const Face& f : g.faces) m.names.push_back(f.name);
  return m;
}

bool GridReport::asserted() const {
  return std::any_of(quotients.begin(), quotients.end(), [](const GridQuotient& q) { return q.expected_skeletal; });
}

bool GridReport::passed() const {
  return std::all_of(quotients.begin(), quotients.end(), [](const GridQuotient& q) { return q.passed(); });
}

GridReport grid_scenario(int k) {
  const GridModel model = grid_model(k);
  const Grid g = build_grid(k);
  const FinSpace& space = model.space;
  const bool assert_verdicts = k >= 2;
  const auto expect = [&](bool v) { return assert_verdicts ? std::optional<bool>(v) : std::nullopt; };

  GridReport r;
  r.k = k;
  r.points = space.size();
  const EquivRel vertical = collapse(g, space, Axis::Vertical, false);
  const EquivRel horizontal = collapse(g, space, Axis::Horizontal, false);
  r.quotients.push_back(classify("vertical", vertical, expect(true)));
  r.quotients.push_back(classify("horizontal", horizontal, expect(true)));
  r.quotients.push_back(classify("join", join(vertical, horizontal), expect(false)));
  const EquivRel vertical_d = collapse(g, space, Axis::Vertical, true);
  const EquivRel horizontal_d = collapse(g, space, Axis::Horizontal, true);
  r.quotients.push_back(classify("vertical+diagonal", vertical_d, expect(true)));
  r.quotients.push_back(classify("horizontal+diagonal", horizontal_d, expect(true)));
  // In the plane the two diagonal variants meet in the diagonal identification
  // alone. The model's strips are single faces, so the literal meet also glues
  // the triangles of each diagonal square to the segment; it is reported only.
  r.quotients.push_back(classify("diagonal identification", diagonal_only(g, space), expect(false)));
  r.quotients.push_back(classify("meet of the diagonal variants", meet(vertical_d, horizontal_d), std::nullopt));
  return r;
}

std::string to_text(const GridReport& r) {
  std::ostringstream os;
  os << "grid k=" << r.k << "\n";
  os << "model: face poset of the " << r.k << "x" << r.k
     << " square, diagonal squares split into two triangles, plus a " << r.k
     << "-edge segment at (0,0); opens are up-sets (minimal open set = coface star)\n";
  os << "verdicts are topological certificates on the quotient maps\n";
  os << "points " << r.points << "\n";
  std::size_t width = 0;
  for (const auto& q : r.quotients) width = std::max(width, q.name.size());
  for (const auto& q : r.quotients) {
    os << q.name << std::string(width - q.name.size() + 2, ' ') << "blocks=" << q.blocks
       << " closed=" << (q.closed_relation ? "true" : "false") << " almost_open=" << (q.almost_open ? "true" : "false")
       << " skeletal=" << (q.skeletal ? "true" : "false") << " [" << q.skeletal_procedure << "]";
    if (q.expected_skeletal) os << " expected=" << (*q.expected_skeletal ? "true" : "false") << (q.passed() ? " ok" : " MISMATCH");
    os << "\n";
  }
  if (!r.asserted()) {
    os << "degenerate grid: report only\n";
  } else {
    os << (r.passed() ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

std::string to_json(const GridReport& r) {
  nlohmann::ordered_json qs = nlohmann::ordered_json::array();
  for (const auto& q : r.quotients) {
    nlohmann::ordered_json j{{"name", q.name},
                             {"blocks", q.blocks},
                             {"closed_relation", q.closed_relation},
                             {"almost_open", q.almost_open},
                             {"skeletal", q.skeletal},
                             {"skeletal_procedure", q.skeletal_procedure}};
    j["expected_skeletal"] = q.expected_skeletal ? nlohmann::ordered_json(*q.expected_skeletal) : nullptr;
    qs.push_back(std::move(j));
  }
  nlohmann::ordered_json j{{"schema", "fintop-grid-report/1"},
                           {"k", r.k},
                           {"points", r.points},
                           {"quotients", qs},
                           {"asserted", r.asserted()},
                           {"passed", r.passed()}};
  return j.dump(2) + "\n";
}

}  // namespace fintop::scenarios
