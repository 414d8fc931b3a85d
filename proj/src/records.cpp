#include "fintop/records.hpp"

#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "fintop/error.hpp"

namespace fintop::records {

namespace {

class Parser {
public:
  explicit Parser(std::string_view text) : text_(text) {}

  Document document() {
    Document doc;
    std::set<std::string> names;
    skip();
    while (pos_ < text_.size()) {
      doc.records.push_back(record());
      const Record& r = doc.records.back();
      if (!r.name.empty() && !names.insert(r.name).second) {
        throw ParseError("line " + std::to_string(r.line) + ": duplicate record name '" + r.name + "'");
      }
      skip();
    }
    return doc;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("line " + std::to_string(line_) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') {
        ++line_;
        ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  bool peek(char c) {
    skip();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!peek(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool ident_char(char c, bool first) const {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' ||
           (!first && (std::isdigit(static_cast<unsigned char>(c)) || c == '-'));
  }

  std::string ident() {
    skip();
    const std::size_t start = pos_;
    if (pos_ >= text_.size() || !ident_char(text_[pos_], true)) fail("expected an identifier");
    while (pos_ < text_.size() && ident_char(text_[pos_], false)) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  bool at_ident() {
    skip();
    return pos_ < text_.size() && ident_char(text_[pos_], true);
  }

  static bool is_kind(const std::string& s) {
    return s == "space" || s == "map" || s == "rel" || s == "sublattice" || s == "hom";
  }

  Record record() {
    const int line = line_;
    std::string kind = ident();
    if (!is_kind(kind)) fail("unknown record kind '" + kind + "'");
    return record_body(std::move(kind), line);
  }

  Record record_body(std::string kind, int line) {
    Record r;
    r.line = line;
    r.kind = std::move(kind);
    if (at_ident()) r.name = ident();
    expect('{');
    while (!peek('}')) {
      std::string key = ident();
      for (const auto& f : r.fields) {
        if (f.first == key) fail("duplicate field '" + key + "'");
      }
      expect('=');
      Value v = value();
      r.fields.emplace_back(std::move(key), std::move(v));
      if (peek(';')) {
        ++pos_;
      } else if (!peek('}')) {
        fail("expected ';' or '}'");
      }
    }
    expect('}');
    return r;
  }

  Value value() {
    skip();
    Value v;
    v.line = line_;
    if (pos_ >= text_.size()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '[') {
      ++pos_;
      Value::List list;
      while (!peek(']')) {
        list.items.push_back(value());
        if (peek(',')) {
          ++pos_;
        } else if (!peek(']')) {
          fail("expected ',' or ']'");
        }
      }
      ++pos_;
      v.data = std::move(list);
    } else if (c == '{') {
      ++pos_;
      Value::Object obj;
      while (!peek('}')) {
        std::string key = ident();
        expect('=');
        obj.fields.emplace_back(std::move(key), value());
        if (peek(',') || peek(';')) {
          ++pos_;
        } else if (!peek('}')) {
          fail("expected ',' or '}'");
        }
      }
      ++pos_;
      v.data = std::move(obj);
    } else if (c == '"') {
      ++pos_;
      std::string s;
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\n') fail("unterminated string");
        s += text_[pos_++];
      }
      if (pos_ >= text_.size()) fail("unterminated string");
      ++pos_;
      v.data = std::move(s);
    } else if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      if (c == '-') ++pos_;
      if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail("expected a digit");
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      const std::string digits(text_.substr(start, pos_ - start));
      try {
        v.data = std::stoll(digits);
      } catch (const std::out_of_range&) {
        fail("integer out of range: " + digits);
      }
    } else if (ident_char(c, true)) {
      std::string id = ident();
      if (is_kind(id) && (peek('{') || at_ident())) {
        v.data = std::make_shared<Record>(record_body(std::move(id), v.line));
      } else {
        v.data = Value::Ident{std::move(id)};
      }
    } else {
      fail(std::string("unexpected character '") + c + "'");
    }
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
};

[[noreturn]] void bad(const Value& v, const std::string& what) {
  throw ParseError("line " + std::to_string(v.line) + ": " + what);
}

long long as_int(const Value& v) {
  if (const auto* i = std::get_if<long long>(&v.data)) return *i;
  bad(v, "expected an integer");
}

int as_point(const Value& v, int n) {
  const long long x = as_int(v);
  if (x < 0 || x >= n) bad(v, "point " + std::to_string(x) + " out of range 0.." + std::to_string(n - 1));
  return static_cast<int>(x);
}

int as_count(const Value& v) {
  const long long x = as_int(v);
  if (x < 0 || x > kSubsetCapacity) bad(v, "count out of range 0.." + std::to_string(kSubsetCapacity));
  return static_cast<int>(x);
}

const std::vector<Value>& as_list(const Value& v) {
  if (const auto* l = std::get_if<Value::List>(&v.data)) return l->items;
  bad(v, "expected a list");
}

Rational as_rational(const Value& v) {
  if (const auto* i = std::get_if<long long>(&v.data)) return Rational(static_cast<long>(*i));
  if (const auto* s = std::get_if<std::string>(&v.data)) {
    try {
      return parse_rational(*s);
    } catch (const ParseError& e) {
      bad(v, e.what());
    }
  }
  bad(v, "expected an integer or a rational string");
}

Subset as_subset(const Value& v, int n) {
  Subset s;
  for (const Value& x : as_list(v)) s.insert(as_point(x, n));
  return s;
}

std::vector<Subset> as_subsets(const Value& v, int n) {
  std::vector<Subset> out;
  for (const Value& x : as_list(v)) out.push_back(as_subset(x, n));
  return out;
}

RationalVector as_vector(const Value& v) {
  RationalVector out;
  for (const Value& x : as_list(v)) out.push_back(as_rational(x));
  return out;
}

const Record& expect_kind(const Record& r, std::string_view kind) {
  if (r.kind != kind) {
    throw ParseError("line " + std::to_string(r.line) + ": expected a " + std::string(kind) + " record, found " + r.kind);
  }
  return r;
}

// A field that holds either a nested record or a reference to a named one.
const Record& resolve(const Value& v, const Document& doc) {
  if (const auto* r = std::get_if<std::shared_ptr<Record>>(&v.data)) return **r;
  if (const auto* id = std::get_if<Value::Ident>(&v.data)) {
    if (const Record* r = doc.named(id->name)) return *r;
    bad(v, "unknown record '" + id->name + "'");
  }
  bad(v, "expected a record or a record name");
}

void only_fields(const Record& r, std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, v] : r.fields) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) bad(v, "unknown field '" + key + "' in " + r.kind + " record");
  }
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string header(std::string_view kind, std::string_view name) {
  std::string out(kind);
  if (!name.empty()) {
    out += ' ';
    out += name;
  }
  return out + " { ";
}

}  // namespace

const Value* Record::find(std::string_view field) const {
  for (const auto& f : fields) {
    if (f.first == field) return &f.second;
  }
  return nullptr;
}

const Value& Record::get(std::string_view field) const {
  if (const Value* v = find(field)) return *v;
  throw ParseError("line " + std::to_string(line) + ": " + kind + " record lacks field '" + std::string(field) + "'");
}

const Record* Document::named(std::string_view name) const {
  for (const Record& r : records) {
    if (r.name == name) return &r;
  }
  return nullptr;
}

const Record& Document::last(std::string_view kind) const {
  for (auto it = records.rbegin(); it != records.rend(); ++it) {
    if (it->kind == kind) return *it;
  }
  throw ParseError("no " + std::string(kind) + " record in input");
}

Document parse(std::string_view text) { return Parser(text).document(); }

Document parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

FinSpace to_space(const Record& r, const Document&) {
  expect_kind(r, "space");
  only_fields(r, {"n", "opens", "neighborhoods"});
  const int n = as_count(r.get("n"));
  const Value* opens = r.find("opens");
  const Value* nb = r.find("neighborhoods");
  if ((opens != nullptr) == (nb != nullptr)) {
    throw ParseError("line " + std::to_string(r.line) + ": space needs exactly one of 'opens' and 'neighborhoods'");
  }
  if (opens) return FinSpace::from_opens(n, as_subsets(*opens, n));
  std::vector<Subset> hoods = as_subsets(*nb, n);
  if (static_cast<int>(hoods.size()) != n) bad(*nb, "need one neighborhood per point");
  return FinSpace::from_neighborhoods(std::move(hoods));
}

ContMap to_map(const Record& r, const Document& doc) {
  expect_kind(r, "map");
  only_fields(r, {"domain", "codomain", "table"});
  FinSpace dom = to_space(resolve(r.get("domain"), doc), doc);
  FinSpace cod = to_space(resolve(r.get("codomain"), doc), doc);
  std::vector<int> table;
  for (const Value& v : as_list(r.get("table"))) table.push_back(as_point(v, cod.size()));
  return make_map(std::move(dom), std::move(cod), std::move(table));
}

EquivRel to_rel(const Record& r, const Document& doc) {
  expect_kind(r, "rel");
  only_fields(r, {"space", "blocks"});
  FinSpace s = to_space(resolve(r.get("space"), doc), doc);
  const int n = s.size();
  return EquivRel::from_blocks(std::move(s), as_subsets(r.get("blocks"), n));
}

ConstraintSystem to_sublattice(const Record& r, const Document&) {
  expect_kind(r, "sublattice");
  only_fields(r, {"n", "zeros", "ties", "generators"});
  const int n = as_count(r.get("n"));
  if (const Value* g = r.find("generators")) {
    if (r.find("zeros") || r.find("ties")) bad(*g, "'generators' excludes 'zeros' and 'ties'");
    std::vector<RationalVector> gens;
    for (const Value& v : as_list(*g)) gens.push_back(as_vector(v));
    return canonical_form(n, gens);
  }
  Subset zeros;
  if (const Value* z = r.find("zeros")) zeros = as_subset(*z, n);
  std::vector<Tie> ties;
  if (const Value* t = r.find("ties")) {
    for (const Value& v : as_list(*t)) {
      const auto* obj = std::get_if<Value::Object>(&v.data);
      if (!obj) bad(v, "expected {x = .., z = .., ratio = ..}");
      Tie tie;
      bool seen[3] = {false, false, false};
      for (const auto& [key, fv] : obj->fields) {
        if (key == "x") {
          tie.x = as_point(fv, n);
          seen[0] = true;
        } else if (key == "z") {
          tie.z = as_point(fv, n);
          seen[1] = true;
        } else if (key == "ratio") {
          tie.ratio = as_rational(fv);
          seen[2] = true;
        } else {
          bad(fv, "unknown tie field '" + key + "'");
        }
      }
      if (!seen[0] || !seen[1] || !seen[2]) bad(v, "a tie needs x, z and ratio");
      ties.push_back(std::move(tie));
    }
  }
  return from_constraints(n, zeros, ties);
}

HomMatrix to_hom(const Record& r, const Document&) {
  expect_kind(r, "hom");
  only_fields(r, {"rows", "cols"});
  std::vector<RationalVector> rows;
  for (const Value& v : as_list(r.get("rows"))) rows.push_back(as_vector(v));
  int n = 0;
  if (const Value* c = r.find("cols")) {
    n = as_count(*c);
  } else if (!rows.empty()) {
    n = static_cast<int>(rows.front().size());
  }
  return HomMatrix(std::move(rows), n);
}

std::vector<RationalVector> generators_of(const Record& r) {
  expect_kind(r, "sublattice");
  std::vector<RationalVector> gens;
  for (const Value& v : as_list(r.get("generators"))) gens.push_back(as_vector(v));
  return gens;
}

std::vector<RationalVector> rows_of(const Record& r) {
  expect_kind(r, "hom");
  std::vector<RationalVector> rows;
  for (const Value& v : as_list(r.get("rows"))) rows.push_back(as_vector(v));
  return rows;
}

int int_field(const Record& r, std::string_view field) { return as_count(r.get(field)); }

namespace {

std::string vector_text(const RationalVector& v, bool quoted) {
  std::vector<std::string> cells;
  for (const Rational& q : v) cells.push_back(quoted ? "\"" + to_string(q) + "\"" : to_string(q));
  return "[" + join(cells, ", ") + "]";
}

bool all_integral(const std::vector<RationalVector>& rows) {
  for (const RationalVector& r : rows) {
    for (const Rational& q : r) {
      if (q.get_den() != 1) return false;
    }
  }
  return true;
}

}  // namespace

std::string print_generators(int n, const std::vector<RationalVector>& g, std::string_view name) {
  std::vector<std::string> parts;
  const bool plain = all_integral(g);
  for (const RationalVector& v : g) parts.push_back(vector_text(v, !plain));
  return header("sublattice", name) + "n = " + std::to_string(n) + "; generators = [" + join(parts, ", ") + "] }";
}

std::string print_rows(int n, const std::vector<RationalVector>& rows, std::string_view name) {
  std::vector<std::string> parts;
  for (const RationalVector& v : rows) parts.push_back(vector_text(v, true));
  return header("hom", name) + "cols = " + std::to_string(n) + "; rows = [" + join(parts, ", ") + "] }";
}

std::string print_subset(Subset s) { return s.to_string(); }

std::string print(const FinSpace& s, std::string_view name) {
  std::vector<std::string> parts;
  std::string out = header("space", name) + "n = " + std::to_string(s.size()) + "; ";
  if (s.enumerable()) {
    for (Subset u : s.opens()) parts.push_back(u.to_string());
    out += "opens = [" + join(parts, ", ") + "]";
  } else {
    for (Subset u : s.neighborhoods()) parts.push_back(u.to_string());
    out += "neighborhoods = [" + join(parts, ", ") + "]";
  }
  return out + " }";
}

std::string print(const ContMap& m, std::string_view name) {
  const std::string base = name.empty() ? std::string("phi") : std::string(name);
  std::vector<std::string> parts;
  for (int v : m.table()) parts.push_back(std::to_string(v));
  return print(m.domain(), base + "_domain") + "\n" + print(m.codomain(), base + "_codomain") + "\n" +
         header("map", name) + "domain = " + base + "_domain; codomain = " + base + "_codomain; table = [" +
         join(parts, ", ") + "] }";
}

std::string print(const EquivRel& r, std::string_view name) {
  const std::string base = name.empty() ? std::string("rel") : std::string(name);
  std::vector<std::string> parts;
  for (Subset b : r.blocks()) parts.push_back(b.to_string());
  return print(r.space(), base + "_space") + "\n" + header("rel", name) + "space = " + base +
         "_space; blocks = [" + join(parts, ", ") + "] }";
}

std::string print(const ConstraintSystem& cs, std::string_view name) {
  std::vector<std::string> parts;
  for (const Tie& t : ties_of(cs)) {
    parts.push_back("{x = " + std::to_string(t.x) + ", z = " + std::to_string(t.z) + ", ratio = \"" +
                    to_string(t.ratio) + "\"}");
  }
  return header("sublattice", name) + "n = " + std::to_string(cs.size()) + "; zeros = " + cs.zeros().to_string() +
         "; ties = [" + join(parts, ", ") + "] }";
}

std::string print(const HomMatrix& t, std::string_view name) {
  std::vector<std::string> rows;
  for (const RationalVector& r : t.matrix()) {
    std::vector<std::string> cells;
    for (const Rational& q : r) cells.push_back("\"" + to_string(q) + "\"");
    rows.push_back("[" + join(cells, ", ") + "]");
  }
  return header("hom", name) + "cols = " + std::to_string(t.cols()) + "; rows = [" + join(rows, ", ") + "] }";
}

}  // namespace fintop::records
