#pragma once

// Sparse bivariate polynomials over Rational, canonical by construction:
// equal polynomials have identical term maps, no zero coefficients stored.

#include <map>
#include <utility>

#include "newtpot/rational.hpp"

namespace newtpot {

class BiPoly {
 public:
  // (exponent of x, exponent of y) -> coefficient
  using TermMap = std::map<std::pair<int, int>, Rational>;

  BiPoly() = default;

  static BiPoly constant(const Rational& c) { return monomial(0, 0, c); }
  static BiPoly monomial(int i, int j, const Rational& c) {
    BiPoly p;
    p.add_term(i, j, c);
    return p;
  }

  void add_term(int i, int j, const Rational& c);

  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;

  const TermMap& terms() const { return terms_; }

  BiPoly operator-() const;
  BiPoly& operator+=(const BiPoly& rhs);
  BiPoly& operator-=(const BiPoly& rhs);
  friend BiPoly operator+(BiPoly lhs, const BiPoly& rhs) { return lhs += rhs; }
  friend BiPoly operator-(BiPoly lhs, const BiPoly& rhs) { return lhs -= rhs; }
  friend BiPoly operator*(const BiPoly& lhs, const BiPoly& rhs);
  friend BiPoly operator*(const Rational& c, const BiPoly& p);

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

  Rational eval(const Rational& x, const Rational& y) const;
  double eval(double x, double y) const;

  // p(y, x): swaps the roles of the two variables.
  BiPoly swap_vars() const;

  // Coefficient polynomials in x, grouped by the power of y.
  std::map<int, BiPoly> collect_y() const;

  std::string str() const;

 private:
  TermMap terms_;
};

}  // namespace newtpot
