#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace wstab {

using Integer = mpz_class;
/// Arbitrary-precision rational; mpq_class keeps values canonical (lowest
/// terms, positive denominator) after every operation.
using Rational = mpq_class;

/// Parses "p", "-p" or "p/q". Throws ParseError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// Parses a comma-separated list of rationals ("1/2,3/4").
std::vector<Rational> parse_rational_list(std::string_view text);

/// Canonical text form: "p/q", or "p" for integers.
std::string to_string(const Rational& r);

int sign(const Rational& r);

}  // namespace wstab
