#pragma once

// Certified numeric evaluation: the Erf primitive, adaptive Gauss-Kronrod
// integration on finite intervals and on (0, inf), and the numeric fallback
// for problems without an elementary closed form.

#include <functional>
#include <utility>

#include "newtpot/rational.hpp"

namespace newtpot {

struct ProblemSpec;

// The odd primitive of e^{-x^2}: Erf(x) = (sqrt(pi)/2) * erf(x),
// with limit sqrt(pi)/2 at +inf.
double erf_value(double xi);

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  long evaluations = 0;
};

inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr long kQuadBudget = 1000000;

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol = kDefaultQuadTol);

// Adaptive integration over (0, inf): the integrand must decay like a
// Gaussian or at least an integrable power. Splits at 1 and maps the tail
// through sigma = 1/u.
QuadratureResult integrate_halfline(const std::function<double(double)>& f,
                                    double tol = kDefaultQuadTol);

// (2/sqrt(pi)) * integral of the problem's raw single-sigma integrand,
// evaluated stably factor by factor (no renormalization involved).
QuadratureResult numeric_fallback(const ProblemSpec& problem);

// Numeric confirmation of the two tabulated integrals
//   (2/sqrt(pi)) int x^{-1} e^{-x^2 a^2} Erf(bx) dx = log(b+sqrt(a^2+b^2)) - log sqrt(a^2)
//   (2/sqrt(pi)) int e^{-x^2 a^2} Erf(bx) Erf(cx) dx = arctan(bc/(a sqrt(a^2+b^2+c^2)))/(2a)
// to the given tolerance; requires a != 0.
std::pair<bool, bool> verify_table_identities(const Rational& a, const Rational& b,
                                              const Rational& c, double tol = 1e-10);

}  // namespace newtpot
