#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace polysym {

using Rational = mpq_class;
using Integer = mpz_class;

// Parses "7", "-3/4" or "+2". Throws polysym::Error on malformed input or a
// zero denominator.
Rational parse_rational(std::string_view text);

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace polysym
