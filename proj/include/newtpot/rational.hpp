#pragma once

// Exact scalar arithmetic. Every symbolic stage of the engine works over
// arbitrary-precision rationals; doubles only appear at final evaluation.

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "newtpot/errors.hpp"

namespace newtpot {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Accepts "p/q", integers, and exact decimal strings ("0.25" -> 1/4).
// Decimals are never routed through floating point.
Rational parse_rational(std::string_view s);

std::string to_string(const Rational& q);
std::string to_string(const Int& n);

double to_double(const Rational& q);

int sign_of(const Rational& q);
Rational rat_abs(const Rational& q);

// q^e for integer e; e < 0 requires q != 0.
Rational rat_pow(const Rational& q, long e);

Rational checked_div(const Rational& a, const Rational& b);

// floor(sqrt(n)) for n >= 0.
Int isqrt_floor(const Int& n);

// Exact rational square root, if q is a perfect square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

// Factorization by trial division up to `bound`; a leftover cofactor beyond
// the bound is kept as a single (possibly composite) factor with exponent 1.
// Requires n >= 1.
std::map<Int, int> trial_factor(Int n, long bound = 1000000);

}  // namespace newtpot
