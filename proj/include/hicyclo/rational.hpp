#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace hicyclo {

// Exact rational scalar. GMP keeps gcd(num, den) = 1 and den > 0 as long as
// values are built through arithmetic, which is all we ever do.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) { return Rational(num, den); }

inline std::string rat_str(const Rational& q) { return q.get_str(); }

// Parses "p/q" or "p"; throws std::invalid_argument on garbage.
Rational rat_parse(const std::string& s);

} // namespace hicyclo
