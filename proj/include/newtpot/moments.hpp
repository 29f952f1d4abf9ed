#pragma once

// Primitive polynomials for moments of the Gaussian kernel.
//
// With u_0 = 0, v_0 = 1 and
//   u_{n+1}(x,y) = y*u_n(x,y) + (n/2)*u_{n-1}(x,y) - x^n/2,
//   v_{n+1}(y)   = y*v_n(y)   + (n/2)*v_{n-1}(y),
// the pair A_n = (u_n, v_n) encodes a primitive of x^n e^{-(x-y)^2} wrt x,
// in the sense  A_n(x,y) = u_n(x,y) e^{-(x-y)^2} + v_n(y) Erf(x-y),
// and B_n = (-u_{n+1}/(n+1), (x^{n+1}-v_{n+1})/(n+1)) one of x^n Erf(x-y).
//
// double_primitive(n,m) gives (p_{n,m}, q_{n,m}) with
//   d^2/dxdy [p e^{-(x-y)^2} + q Erf(x-y)] = x^n y^m e^{-(x-y)^2},
// built by expanding u_n(x,y) y^m and v_n(y) y^m in powers of y and
// replacing each y^k via A_k(y,x) resp. -B_k(y,x).
// force_double_primitive(n,m) is the analogue for x^n y^m (x-y) e^{-(x-y)^2};
// its construction makes the leading coefficients cancel structurally, so
// deg p* = n+m-1 and deg q* = n+m instead of n+m+1 and n+m+2.

#include "newtpot/bipoly.hpp"

namespace newtpot {

const BiPoly& u_poly(int n);
const BiPoly& v_poly(int n);

struct PrimitivePair {
  BiPoly gauss_coeff;  // multiplies e^{-(x-y)^2}
  BiPoly erf_coeff;    // multiplies Erf(x-y)

  friend bool operator==(const PrimitivePair&, const PrimitivePair&) = default;
};

PrimitivePair primitive_A(int n);
PrimitivePair primitive_B(int n);

const PrimitivePair& double_primitive(int n, int m);
const PrimitivePair& force_double_primitive(int n, int m);

}  // namespace newtpot
