#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dpa {

/// Exact rational number. GMP keeps values canonical (reduced, positive
/// denominator) through arithmetic; parse_rational canonicalizes inputs.
using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", decimal strings ("1.5", "-0.25") and plain integers, exactly.
/// Throws ModelError on malformed input or zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form; integers render without the "/1".
std::string to_string(const Rational& q);

/// Faithful conversion (one of the two neighbouring doubles).
double to_double(const Rational& q);

inline const Integer& numerator(const Rational& q) { return q.get_num(); }
inline const Integer& denominator(const Rational& q) { return q.get_den(); }

}  // namespace dpa
