#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace fintop {

/// Exact arbitrary-precision rational (GMP).
using Rational = mpq_class;
using RationalVector = std::vector<Rational>;

/// Accepts "3", "-2/4", " 7 / 3 ". Result is canonical. Throws ParseError.
Rational parse_rational(std::string_view text);
/// "p" or "p/q" in lowest terms.
std::string to_string(const Rational& q);

}  // namespace fintop
