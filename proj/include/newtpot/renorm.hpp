#pragma once

// Integration-by-parts rewrite engine. The single generic rule, with
// nu = mu - 1 >= 1 and h(sigma) = e^{-sigma^2 G} prod_j Erf(sigma delta_j):
//
//   sigma^{-(nu+1)} h(sigma)  ->  nu^{-1} sigma^{-nu} h'(sigma)
//
// i.e. one child (mu-2, G, same args) with coefficient -2G c / nu, plus one
// child (mu-1, G + delta_j^2, args minus delta_j) with coefficient c delta_j / nu
// for every erf argument. Boundary terms cancel in total and are never
// formed. Terms with mu <= 1 are terminal: rewriting them would create
// log(sigma) factors.

#include <map>

#include "newtpot/sigma.hpp"

namespace newtpot {

enum class TerminalClass {
  I1,                   // mu=0, r=0, G>0: integrates to 1/sqrt(G)
  I2,                   // mu=1, r=1, G>0: arcsinh(delta/sqrt(G))
  I3,                   // mu=0, r=2, G>0: arctan form
  LogLedger,            // mu=1, r=1, G=0: finite only if the ledger sums to zero
  ResidualConvergent,   // mu in {0,1}, r>=3, G>0: convergent, no elementary form
  DivergentAtInfinity,  // G=0 with decay slower than sigma^{-2}
  DivergentConstant,    // mu=0, r=0, G=0
};

// Requires t.mu >= 2; throws NotRewritable otherwise.
SigmaExpr rewrite_step(const SigmaTerm& t, const Rational& coeff);

// Fixpoint of rewrite_step over all terms with mu >= 2;
// the result only contains terms with mu in {0, 1}.
SigmaExpr renormalize(const SigmaExpr& e);

TerminalClass classify_term(const SigmaTerm& t);

// Total partition of a renormalized expression (all mu <= 1).
std::map<TerminalClass, SigmaExpr> classify_terms(const SigmaExpr& e);

const char* terminal_class_name(TerminalClass c);

}  // namespace newtpot
