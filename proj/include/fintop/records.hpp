#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fintop/comphom.hpp"
#include "fintop/contmap.hpp"
#include "fintop/equivrel.hpp"
#include "fintop/funclat.hpp"

namespace fintop::records {

struct Record;

/// A field value: integer, quoted string, identifier (a reference to a
/// named record), list, inline object `{a = 1, b = 2}`, or a nested record.
struct Value {
  struct Ident {
    std::string name;
  };
  struct List {
    std::vector<Value> items;
  };
  struct Object {
    std::vector<std::pair<std::string, Value>> fields;
  };
  std::variant<long long, std::string, Ident, List, Object, std::shared_ptr<Record>> data;
  int line = 0;
};

/// KIND [NAME] { field = value; ... }
struct Record {
  std::string kind;
  std::string name;
  std::vector<std::pair<std::string, Value>> fields;
  int line = 0;

  const Value* find(std::string_view field) const;
  const Value& get(std::string_view field) const;
};

/// A parsed file. Later records may refer to earlier named ones.
struct Document {
  std::vector<Record> records;

  const Record* named(std::string_view name) const;
  /// The only record of this kind, or the last one if several.
  const Record& last(std::string_view kind) const;
};

/// Throws ParseError with a line number on malformed text.
Document parse(std::string_view text);
Document parse_file(const std::string& path);

FinSpace to_space(const Record& r, const Document& doc);
ContMap to_map(const Record& r, const Document& doc);
EquivRel to_rel(const Record& r, const Document& doc);
ConstraintSystem to_sublattice(const Record& r, const Document& doc);
HomMatrix to_hom(const Record& r, const Document& doc);

/// The literal `generators` of a sublattice record and `rows` of a hom
/// record, without canonicalising or validating them.
std::vector<RationalVector> generators_of(const Record& r);
std::vector<RationalVector> rows_of(const Record& r);
int int_field(const Record& r, std::string_view field);

/// Printers emit text that parses back to an equal value. Spaces up to 16
/// points are written with `opens`, larger ones with `neighborhoods`.
std::string print(const FinSpace& s, std::string_view name = {});
/// The two spaces are emitted as named records ahead of the map.
std::string print(const ContMap& m, std::string_view name = {});
std::string print(const EquivRel& r, std::string_view name = {});
std::string print(const ConstraintSystem& cs, std::string_view name = {});
std::string print(const HomMatrix& t, std::string_view name = {});

/// A sublattice record in generator form.
std::string print_generators(int n, const std::vector<RationalVector>& g, std::string_view name = {});
/// A hom record holding any matrix; to_hom rejects non-homomorphisms.
std::string print_rows(int n, const std::vector<RationalVector>& rows, std::string_view name = {});

/// "[0,2,5]"
std::string print_subset(Subset s);

}  // namespace fintop::records
