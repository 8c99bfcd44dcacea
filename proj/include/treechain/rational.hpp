#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace treechain {

/// Exact rational scalar used by every predicate in the library.
using Rational = mpq_class;

/// Parses "p", "p/q" or a finite decimal such as "0.75"; throws std::invalid_argument.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" text ("p" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

} // namespace treechain
