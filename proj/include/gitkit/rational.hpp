#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gitkit {

/// Arbitrary-precision rational; always kept in canonical (lowest-terms) form.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "p", or a terminating decimal such as "0.5" / "-1.25".
/// Throws DomainError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p/q" in lowest terms with q > 0, or "p" when q == 1.
std::string to_string(const Rational& q);

/// Comma separated list of rationals, e.g. "3,1/2,-2".
std::vector<Rational> parse_rational_list(std::string_view text);

bool is_integer(const Rational& q);

/// Converts an integral rational to int64, throwing if it is not integral or does not fit.
std::int64_t to_int64(const Rational& q);

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

}  // namespace gitkit
