#include "fintop/subset.hpp"

#include <algorithm>

namespace fintop {

std::string Subset::to_string() const {
  std::string out = "[";
  bool first = true;
  for_each([&](int p) {
    if (!first) out += ',';
    out += std::to_string(p);
    first = false;
  });
  out += ']';
  return out;
}

std::vector<Subset> subsets_of(Subset universe) {
  std::vector<Subset> out;
  out.reserve(std::size_t{1} << universe.size());
  const Subset::Word u = universe.bits();
  Subset::Word s = u;
  while (true) {
    out.emplace_back(s);
    if (s == 0) break;
    s = (s - 1) & u;
  }
  std::sort(out.begin(), out.end(), BySizeThenValue{});
  return out;
}

}  // namespace fintop
