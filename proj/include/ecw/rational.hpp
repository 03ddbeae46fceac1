#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace ecw {

// Compare against Rational(k), never a bare integer: with Boost 1.74 under
// C++20, rational == int resolves to a rewritten candidate that recurses.
using Rational = boost::rational<std::int64_t>;

// Accepts "p", "-p" and "p/q". Throws std::invalid_argument on anything else
// or on a zero denominator.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, otherwise "p/q".
std::string format_rational(const Rational& value);

std::int64_t lcm_of_denominators(const Rational* first, const Rational* last);

}  // namespace ecw
