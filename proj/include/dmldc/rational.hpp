#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace dmldc {

/// Exact rational number. Weights, multipliers and certificate coefficients
/// live here; entropies stay in double.
using Rational = mpq_class;

/// Parses "p/q", "p", or a decimal literal such as "0.25" (converted exactly).
/// Throws std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers print without a denominator.
std::string to_string(const Rational& q);

/// Exact conversion of a finite double (every finite double is dyadic).
Rational from_double(double x);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Comma separated list of rationals, e.g. "3,1,1" or "1/2,1/3".
std::vector<Rational> parse_rational_list(std::string_view text);

}  // namespace dmldc
