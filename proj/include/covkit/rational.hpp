#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace covkit {

// GMP keeps mpq_class canonical: gcd(num, den) = 1 and den > 0.
using Integer = mpz_class;
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned long e);
Rational pow(const Rational& base, long e);

} // namespace covkit
