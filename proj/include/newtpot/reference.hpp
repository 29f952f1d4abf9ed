#pragma once

// Independently transcribed closed forms used to cross-validate the engine.
// These deliberately share no machinery with the pipeline.

#include <array>

#include "newtpot/closedform.hpp"
#include "newtpot/problem.hpp"

namespace newtpot {

// Waldvogel's symmetric formula for the potential of a homogeneous cuboid at
// a point: with delta_j in {y_j - a_j, b_j - y_j} and rho = |delta|,
//   V = sum_{vertices} sum_{cyc} ( d1 d2 atanh(d3/rho) - d1^2/2 atan(d2 d3/(d1 rho)) ).
// Degenerate d1 = 0 arctan pieces contribute their limit 0.
double waldvogel_potential(const CuboidSpec& q, const std::array<double, 3>& y);

// Garcia-Abdeslem's closed form for int_Q x3^4 / |x|^3 dx (field point at the
// origin), evaluated as the alternating difference over the cuboid's corners:
//   (1/4)[ d1 d2 d3 rho - 2 d1 d2 (d1^2+d2^2) log(d3+rho)
//          + sum_cyc d1^4 atan(d2 d3/(d1 rho)) ].
double garcia_h3(const CuboidSpec& q);

// Fornberg's 14-term constant for the force between touching unit cubes.
ClosedExpr fornberg_constant();

}  // namespace newtpot
