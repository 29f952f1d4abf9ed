#include "newtpot/rational.hpp"

#include <cctype>

namespace newtpot {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (s.empty()) throw Error("empty rational literal");

  int sgn = 1;
  if (s.front() == '+' || s.front() == '-') {
    if (s.front() == '-') sgn = -1;
    s.remove_prefix(1);
  }
  if (s.empty()) throw Error("invalid rational literal");

  auto slash = s.find('/');
  if (slash != std::string_view::npos) {
    std::string_view num = s.substr(0, slash);
    std::string_view den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den))
      throw Error("invalid rational literal: " + std::string(s));
    Int n(std::string(num)), d(std::string(den));
    if (d == 0) throw DivisionByZero();
    Rational q(n, d);
    return sgn < 0 ? Rational(-q) : q;
  }

  auto dot = s.find('.');
  if (dot != std::string_view::npos) {
    std::string_view ip = s.substr(0, dot);
    std::string_view fp = s.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw Error("invalid rational literal: " + std::string(s));
    if (!ip.empty() && !all_digits(ip)) throw Error("invalid rational literal: " + std::string(s));
    if (!fp.empty() && !all_digits(fp)) throw Error("invalid rational literal: " + std::string(s));
    Int n = ip.empty() ? Int(0) : Int(std::string(ip));
    Int scale = 1;
    for (char c : fp) {
      n = n * 10 + (c - '0');
      scale *= 10;
    }
    Rational q(n, scale);
    return sgn < 0 ? Rational(-q) : q;
  }

  if (!all_digits(s)) throw Error("invalid rational literal: " + std::string(s));
  Rational q{Int(std::string(s))};
  return sgn < 0 ? Rational(-q) : q;
}

std::string to_string(const Int& n) { return n.str(); }

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

int sign_of(const Rational& q) {
  if (q == 0) return 0;
  return q < 0 ? -1 : 1;
}

Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

Rational rat_pow(const Rational& q, long e) {
  if (e == 0) return Rational(1);
  if (q == 0) {
    if (e < 0) throw DivisionByZero();
    return Rational(0);
  }
  bool invert = e < 0;
  unsigned long k = invert ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Int n = boost::multiprecision::pow(numerator(q), static_cast<unsigned>(k));
  Int d = boost::multiprecision::pow(denominator(q), static_cast<unsigned>(k));
  return invert ? Rational(d, n) : Rational(n, d);
}

Rational checked_div(const Rational& a, const Rational& b) {
  if (b == 0) throw DivisionByZero();
  return a / b;
}

Int isqrt_floor(const Int& n) {
  if (n < 0) throw InvalidRadicand();
  return boost::multiprecision::sqrt(n);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  if (q == 0) return Rational(0);
  Int n = numerator(q), d = denominator(q);
  Int rn = isqrt_floor(n), rd = isqrt_floor(d);
  if (rn * rn != n || rd * rd != d) return std::nullopt;
  return Rational(rn, rd);
}

std::map<Int, int> trial_factor(Int n, long bound) {
  if (n < 1) throw Error("trial_factor requires n >= 1");
  std::map<Int, int> out;
  for (Int p = 2; p <= bound && p * p <= n; p = (p == 2 ? Int(3) : p + 2)) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

}  // namespace newtpot
