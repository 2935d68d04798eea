#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace sgdf {

// Exact scalar for everything that the construction pins down exactly:
// dyadic coordinates, harmonic extension values, closed-form energies and
// the corner resistance recursion. GMP keeps values canonical as long as
// they are produced by these helpers or by arithmetic on canonical values.
using Rational = mpq_class;

// num/den as a canonical rational; den must be nonzero.
Rational frac(long num, long den);

// base^k, k may be negative (base nonzero in that case).
Rational pow_frac(const Rational& base, long k);

inline double to_double(const Rational& q) { return q.get_d(); }

// Accepts "7", "-5/7" and plain decimals such as "0.25".
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

}  // namespace sgdf
