#include "newtpot/surd.hpp"

#include <cmath>

namespace newtpot {

Surd surd_simplify(const Surd& s) {
  if (s.radicand < 0) throw InvalidRadicand();
  if (s.coeff == 0 || s.radicand == 0) return Surd{Rational(0), Rational(1)};

  // coeff * sqrt(p/q) = (coeff/q) * sqrt(p*q)
  Int p = numerator(s.radicand), q = denominator(s.radicand);
  Rational coeff = s.coeff / Rational(q);
  Int n = p * q;

  Int square = 1, rest = 1;
  for (const auto& [f, e] : trial_factor(n)) {
    if (e / 2 > 0) square *= boost::multiprecision::pow(f, static_cast<unsigned>(e / 2));
    if (e % 2) rest *= f;
  }
  // A leftover cofactor beyond the bound may itself be a perfect square.
  Int r = isqrt_floor(rest);
  if (r * r == rest) {
    square *= r;
    rest = 1;
  }
  coeff *= Rational(square);
  return Surd{coeff, Rational(rest)};
}

double surd_value(const Surd& s) {
  return to_double(s.coeff) * std::sqrt(to_double(s.radicand));
}

std::string surd_to_string(const Surd& s) {
  if (s.coeff == 0) return "0";
  if (s.radicand == 1) return to_string(s.coeff);
  std::string root = "sqrt(" + to_string(s.radicand) + ")";
  Int n = numerator(s.coeff), d = denominator(s.coeff);
  std::string out;
  if (n == -1)
    out = "-" + root;
  else if (n == 1)
    out = root;
  else
    out = n.str() + "*" + root;
  if (d != 1) out += "/" + d.str();
  return out;
}

}  // namespace newtpot
