#pragma once

// Terminal sigma-terms translated into closed-form atoms:
//
//   I1:  c e^{-s^2 G}                    ->  c / sqrt(G)
//   I2:  c s^{-1} e^{-s^2 G} Erf(s d)    ->  c (log(d + sqrt(G+d^2)) - log sqrt(G))
//   I3:  c e^{-s^2 G} Erf(s d2) Erf(s d3)
//          ->  c/(2 sqrt(G)) * arctan(d2 d3 / (sqrt(G) sqrt(G+d2^2+d3^2)))
//
// plus the atoms canonicalization can produce from these (surds, logs of
// rationals, rational multiples of pi) and the generic log/arctan forms used
// by transcribed reference expressions.

#include <vector>

#include "newtpot/quadrature.hpp"
#include "newtpot/rational.hpp"
#include "newtpot/sigma.hpp"

namespace newtpot {

enum class AtomKind {
  RationalConst,  // coeff
  SurdAtom,       // coeff * sqrt(p1)
  LogRational,    // coeff * log(p1), p1 > 0 rational
  LogOnly,        // coeff * log(p2 + sqrt(p1 + p2^2))            (p1 = G, p2 = delta)
  LogPair,        // coeff * (log(p2 + sqrt(p1 + p2^2)) - log sqrt(p1))
  ArctanAtom,     // coeff/(2 sqrt(p1)) * arctan(p2 p3 / (sqrt(p1) sqrt(p1+p2^2+p3^2)))
  PiSurd,         // coeff * sqrt(p1) * pi
  GenLog,         // coeff * log(p1 + p2 sqrt(p3))
  GenArctan,      // coeff * arctan(p1 sqrt(p2))
};

struct ClosedAtom {
  AtomKind kind = AtomKind::RationalConst;
  Rational coeff{0};
  Rational p1{0}, p2{0}, p3{0};

  double value() const;
  friend bool operator==(const ClosedAtom&, const ClosedAtom&) = default;
};

struct Residual {
  SigmaTerm term;
  Rational coeff;

  friend bool operator==(const Residual&, const Residual&) = default;
};

enum class ResultStatus { Elementary, Mixed, NumericOnly, Divergent };

const char* status_name(ResultStatus s);

struct ClosedExpr {
  std::vector<ClosedAtom> atoms;
  std::vector<Residual> residuals;
  Rational ledger{0};  // must be 0 for a finite result
  ResultStatus status = ResultStatus::Elementary;

  friend bool operator==(const ClosedExpr&, const ClosedExpr&) = default;
};

// Terms classified I1/I2/I3 only; throws NotTranslatable otherwise.
ClosedAtom translate_term(const SigmaTerm& t, const Rational& coeff);

// Resolves a LogLedger bucket (mu=1, r=1, G=0 terms) in the rho -> 0 limit:
// arcsinh(d/rho) = log(2d) - log(rho) + O(rho^2) for d > 0, so each term
// contributes c*log(2d) and c to the log(rho) ledger, which must sum to zero.
std::pair<std::vector<ClosedAtom>, Rational> ledger_resolve(const SigmaExpr& log_ledger_bucket);

// Combines like atoms exactly, simplifies surds, reduces fully rational logs
// (multiplicatively, on rational arguments only), recognizes arctan values
// tau^2 in {1/3, 1, 3} as multiples of pi, and fixes a deterministic order.
ClosedExpr canonicalize(const ClosedExpr& e);

struct EvalResult {
  double value = 0;
  double error = 0;
};

QuadratureResult price_residual(const Residual& r, double tol = kDefaultQuadTol);

// Throws NotFinite on divergent expressions.
EvalResult evaluate_numeric(const ClosedExpr& e, int target_digits = 12);

enum class EmitFormat { Text, Latex, Json };

std::string emit(const ClosedExpr& e, EmitFormat format, int digits = 12);

}  // namespace newtpot
