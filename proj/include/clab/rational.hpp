#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace clab {

using Rational = boost::rational<std::int64_t>;

/// "p" when the denominator is 1, else "p/q".
std::string to_string(const Rational& r);

/// Accepts "p", "p/q" and optional surrounding whitespace. Throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace clab
