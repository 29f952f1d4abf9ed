#pragma once

// Problem descriptions and the end-to-end pipeline: per-axis factors,
// product, renormalization, classification, translation, evaluation.

#include <optional>
#include <vector>

#include "newtpot/closedform.hpp"
#include "newtpot/renorm.hpp"
#include "newtpot/sigma.hpp"

namespace newtpot {

struct CuboidSpec {
  std::vector<std::pair<Rational, Rational>> bounds;  // per-axis [a_j, b_j]

  int dim() const { return static_cast<int>(bounds.size()); }
  friend bool operator==(const CuboidSpec&, const CuboidSpec&) = default;
};

enum class KernelKind {
  Potential,       // 1/r between two cuboids
  Force,           // (x_axis - y_axis)/r^3 between two cuboids
  PointPotential,  // 1/r between a cuboid and a point
  PointForce,      // x_axis/r^3 of a cuboid, field point translated to 0
  R3Potential,     // plain 1/r^3 between two cuboids (no moment factor)
};

struct ProblemSpec {
  int dim = 3;
  KernelKind kind = KernelKind::Potential;
  int axis = 1;  // 1-based, force kinds only
  CuboidSpec q;
  CuboidSpec qp;                // second cuboid (cuboid-cuboid kinds)
  std::vector<Rational> point;  // field point (point kinds)
  std::vector<int> n;           // monomial weight on Q
  std::vector<int> m;           // monomial weight on Q'
  Rational rho{0};              // regularization offset, dims 1-2 only
};

// Throws InvalidSpec on dimension/index mismatches, inverted bounds, or a
// 1D spec with rho = 0 whose intervals overlap or touch.
void validate(const ProblemSpec& spec);

struct FactorSet {
  std::vector<SigmaExpr> factors;
  std::vector<int> multiplicity;  // factors[i] appears multiplicity[i] times
  bool r3_weight = false;         // multiply the product by 2 sigma^2
  Rational rho{0};                // extra exp(-sigma^2 rho^2) prefactor
};

FactorSet build_factors(const ProblemSpec& spec);

struct RunResult {
  ClosedExpr closed;  // canonicalized
  std::map<TerminalClass, int> class_sizes;
  std::optional<QuadratureResult> fallback;  // set for numeric-only results
  EvalResult total;                          // closed + residuals, or fallback
};

// Full pipeline. Falls back to direct numeric integration when the
// renormalized integrand contains divergent term classes (possible only for
// the r^-3 kernel) but the defining integral itself converges, and for
// dimensions too large to expand symbolically.
RunResult run(const ProblemSpec& spec);

enum class DumpStage { Factors, Raw, Renormalized };

std::string dump_integrand(const ProblemSpec& spec, DumpStage stage,
                           EmitFormat format = EmitFormat::Text);

}  // namespace newtpot
