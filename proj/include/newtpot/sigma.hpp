#pragma once

// Integrands on the sigma half-line as exact linear combinations of
//   c * sigma^{-mu} * exp(-sigma^2 G) * prod_j Erf(sigma delta_j).
//
// Terms are kept canonical: Erf(0) factors prune the term, negative Erf
// arguments fold their sign into the coefficient (Erf is odd), arguments are
// sorted, and like terms combine on insertion. Every engine-built expression
// satisfies the parity invariant mu - #erf_args even.

#include <functional>
#include <span>
#include <vector>

#include "newtpot/rational.hpp"

namespace newtpot {

struct SigmaTerm {
  int mu = 0;                     // power in sigma^{-mu}, >= 0
  Rational gauss_rate{0};         // G >= 0 in exp(-sigma^2 G)
  std::vector<Rational> erf_args; // sorted, all > 0

  int erf_count() const { return static_cast<int>(erf_args.size()); }

  friend bool operator==(const SigmaTerm&, const SigmaTerm&) = default;
  friend bool operator<(const SigmaTerm& a, const SigmaTerm& b) {
    if (a.mu != b.mu) return a.mu < b.mu;
    if (a.gauss_rate != b.gauss_rate) return a.gauss_rate < b.gauss_rate;
    return a.erf_args < b.erf_args;
  }
};

class SigmaExpr {
 public:
  using TermMap = std::map<SigmaTerm, Rational>;

  SigmaExpr() = default;

  // Normalizes raw erf arguments (drops the whole term on a zero argument,
  // folds signs, sorts) and combines with any existing like term.
  void insert(int mu, Rational gauss_rate, std::vector<Rational> erf_args, Rational coeff);
  void insert(SigmaTerm term, const Rational& coeff);

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const TermMap& terms() const { return terms_; }

  SigmaExpr& operator+=(const SigmaExpr& rhs);
  friend SigmaExpr operator+(SigmaExpr lhs, const SigmaExpr& rhs) { return lhs += rhs; }
  SigmaExpr scaled(const Rational& c) const;

  // Multiplies by 2 sigma^2, as needed for the plain r^{-3} kernel; every
  // term must keep mu >= 0.
  SigmaExpr r3_weighted() const;

  friend bool operator==(const SigmaExpr&, const SigmaExpr&) = default;

 private:
  TermMap terms_;
};

// f(sigma) = int_a^b int_{a'}^{b'} x^n y^m e^{-sigma^2 (x-y)^2} dy dx
SigmaExpr interval_factor(int n, int m, const Rational& a, const Rational& b,
                          const Rational& ap, const Rational& bp);

// f*(sigma) = 2 sigma^2 int int x^n y^m (x-y) e^{-sigma^2 (x-y)^2} dy dx
SigmaExpr force_factor(int n, int m, const Rational& a, const Rational& b,
                       const Rational& ap, const Rational& bp);

// h(sigma) = int_a^b x^n e^{-sigma^2 x^2} dx
SigmaExpr point_factor(int n, const Rational& a, const Rational& b);

// h*(sigma) = 2 sigma^2 int_a^b x^{n+1} e^{-sigma^2 x^2} dx
SigmaExpr point_force_factor(int n, const Rational& a, const Rational& b);

// Multiplies by e^{-sigma^2 rho^2}.
SigmaExpr attach_gaussian_prefactor(const SigmaExpr& e, const Rational& rho);

SigmaExpr product(const SigmaExpr& a, const SigmaExpr& b);
SigmaExpr product(std::span<const SigmaExpr> factors);

// Exact Taylor coefficients c_k of f(sigma) = sum_k c_k sigma^{2k} for the
// interval factor, via c_k = (-1)^k/k! * intint x^n y^m (x-y)^{2k}.
std::vector<Rational> small_sigma_series(int n, int m, const Rational& a, const Rational& b,
                                         const Rational& ap, const Rational& bp, int order);

// Evaluates a SigmaExpr at sigma > 0. Direct evaluation for sigma >= sigma0;
// below that, an exact power series around 0 (the cancelling sigma^{-2k}
// singularities vanish termwise in rational arithmetic, so no precision is
// lost). Building the series costs something, so quadrature loops should use
// SigmaEvaluator, which precomputes it once.
class SigmaEvaluator {
 public:
  explicit SigmaEvaluator(const SigmaExpr& e, double sigma0 = 0.5, int min_terms = 24);

  double operator()(double sigma) const;
  double sigma0() const { return sigma0_; }

 private:
  struct DirectTerm {
    double coeff;
    int mu;
    double gauss_rate;
    std::vector<double> erf_args;
  };
  std::vector<DirectTerm> direct_;
  std::vector<double> series_;  // coefficients in t = sigma^2
  double sigma0_;
};

double eval_sigma_expr(const SigmaExpr& e, double sigma, double sigma0 = 0.5);

// Deterministic renderings ("2*Erf(sigma)/sigma - 1/sigma^2 + ...").
std::string sigma_to_string(const SigmaExpr& e);
std::string sigma_to_latex(const SigmaExpr& e);

}  // namespace newtpot
