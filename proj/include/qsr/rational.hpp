#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace qsr {

// Always normalized: lowest terms, positive denominator.
using Rational = boost::rational<std::int64_t>;

std::string to_string(const Rational& q);

/// Parses "a", "-a" or "a/b". Throws qsr::Error on malformed input.
Rational parse_rational(std::string_view text);

}  // namespace qsr
