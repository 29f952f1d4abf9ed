#include "newtpot/sigma.hpp"

#include <algorithm>
#include <cmath>

#include "newtpot/errors.hpp"
#include "newtpot/moments.hpp"
#include "newtpot/quadrature.hpp"

namespace newtpot {

void SigmaExpr::insert(int mu, Rational gauss_rate, std::vector<Rational> erf_args,
                       Rational coeff) {
  if (coeff == 0) return;
  if (mu < 0) throw Error("positive sigma power cannot be represented");
  if (gauss_rate < 0) throw Error("negative Gaussian rate");
  for (auto& d : erf_args) {
    if (d == 0) return;  // Erf(0) = 0 kills the term
    if (d < 0) {
      d = -d;
      coeff = -coeff;
    }
  }
  std::sort(erf_args.begin(), erf_args.end());
  insert(SigmaTerm{mu, std::move(gauss_rate), std::move(erf_args)}, coeff);
}

void SigmaExpr::insert(SigmaTerm term, const Rational& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(term);
  if (it == terms_.end()) {
    terms_.emplace(std::move(term), coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

SigmaExpr& SigmaExpr::operator+=(const SigmaExpr& rhs) {
  for (const auto& [t, c] : rhs.terms_) insert(t, c);
  return *this;
}

SigmaExpr SigmaExpr::scaled(const Rational& c) const {
  SigmaExpr out;
  if (c == 0) return out;
  for (const auto& [t, tc] : terms_) out.terms_.emplace(t, c * tc);
  return out;
}

SigmaExpr SigmaExpr::r3_weighted() const {
  SigmaExpr out;
  for (const auto& [t, c] : terms_) {
    if (t.mu < 2) throw Error("r^-3 weight would produce a positive sigma power");
    out.insert(SigmaTerm{t.mu - 2, t.gauss_rate, t.erf_args}, 2 * c);
  }
  return out;
}

namespace {

// Adds the four-corner evaluation of the rescaled primitive
//   sigma^{-n-m-2-shift} * scale * (p(sx,sy) e^{-s^2(x-y)^2} + q(sx,sy) Erf(s(x-y)))
// where shift = -1, scale = 2 for the 2*sigma force variant.
void accumulate_corners(SigmaExpr& out, const PrimitivePair& pair, int n, int m,
                        const Rational& a, const Rational& b, const Rational& ap,
                        const Rational& bp, int mu_shift, const Rational& scale) {
  struct Corner {
    const Rational& x;
    const Rational& y;
    int sign;
  };
  const Corner corners[4] = {{b, bp, +1}, {a, bp, -1}, {b, ap, -1}, {a, ap, +1}};
  for (const auto& corner : corners) {
    Rational delta = corner.x - corner.y;
    Rational rate = delta * delta;
    Rational corner_scale = scale * corner.sign;
    for (const auto& [k, c] : pair.gauss_coeff.terms()) {
      int mu = n + m + 2 - (k.first + k.second) + mu_shift;
      out.insert(mu, rate, {},
                 corner_scale * c * rat_pow(corner.x, k.first) * rat_pow(corner.y, k.second));
    }
    if (delta == 0) continue;  // Erf part vanishes
    for (const auto& [k, c] : pair.erf_coeff.terms()) {
      int mu = n + m + 2 - (k.first + k.second) + mu_shift;
      out.insert(mu, Rational(0), {delta},
                 corner_scale * c * rat_pow(corner.x, k.first) * rat_pow(corner.y, k.second));
    }
  }
}

void check_interval(const Rational& a, const Rational& b) {
  if (a > b) throw InvalidInterval();
}

}  // namespace

SigmaExpr interval_factor(int n, int m, const Rational& a, const Rational& b, const Rational& ap,
                          const Rational& bp) {
  check_interval(a, b);
  check_interval(ap, bp);
  SigmaExpr out;
  accumulate_corners(out, double_primitive(n, m), n, m, a, b, ap, bp, 0, Rational(1));
  return out;
}

SigmaExpr force_factor(int n, int m, const Rational& a, const Rational& b, const Rational& ap,
                       const Rational& bp) {
  check_interval(a, b);
  check_interval(ap, bp);
  SigmaExpr out;
  // 2 sigma^2 * primitive rescales to 2 sigma * (p*, q*), so mu drops by one.
  accumulate_corners(out, force_double_primitive(n, m), n, m, a, b, ap, bp, -1, Rational(2));
  return out;
}

namespace {

// One-bound contribution of the rescaled primitive of x^n e^{-sigma^2 x^2}:
// sigma^{-n-1+mu_shift} * scale * (u_n(sx, 0) e^{-s^2x^2} + v_n(0) Erf(sx)).
void accumulate_point_bound(SigmaExpr& out, int n, const Rational& x, int sign, int mu_shift,
                            const Rational& scale) {
  Rational rate = x * x;
  Rational bound_scale = scale * sign;
  for (const auto& [k, c] : u_poly(n).terms()) {
    if (k.second != 0) continue;  // y = 0
    int mu = n + 1 - k.first + mu_shift;
    out.insert(mu, rate, {}, bound_scale * c * rat_pow(x, k.first));
  }
  Rational v0 = v_poly(n).eval(Rational(0), Rational(0));
  if (v0 != 0 && x != 0) out.insert(n + 1 + mu_shift, Rational(0), {x}, bound_scale * v0);
}

}  // namespace

SigmaExpr point_factor(int n, const Rational& a, const Rational& b) {
  check_interval(a, b);
  SigmaExpr out;
  accumulate_point_bound(out, n, b, +1, 0, Rational(1));
  accumulate_point_bound(out, n, a, -1, 0, Rational(1));
  return out;
}

SigmaExpr point_force_factor(int n, const Rational& a, const Rational& b) {
  check_interval(a, b);
  SigmaExpr out;
  // 2 sigma^2 times the primitive of x^{n+1} e^{-sigma^2 x^2} shifts mu by -2.
  accumulate_point_bound(out, n + 1, b, +1, -2, Rational(2));
  accumulate_point_bound(out, n + 1, a, -1, -2, Rational(2));
  return out;
}

SigmaExpr attach_gaussian_prefactor(const SigmaExpr& e, const Rational& rho) {
  if (rho < 0) throw Error("rho must be nonnegative");
  if (rho == 0) return e;
  Rational rho2 = rho * rho;
  SigmaExpr out;
  for (const auto& [t, c] : e.terms())
    out.insert(SigmaTerm{t.mu, t.gauss_rate + rho2, t.erf_args}, c);
  return out;
}

SigmaExpr product(const SigmaExpr& a, const SigmaExpr& b) {
  SigmaExpr out;
  for (const auto& [ta, ca] : a.terms()) {
    for (const auto& [tb, cb] : b.terms()) {
      std::vector<Rational> erfs = ta.erf_args;
      erfs.insert(erfs.end(), tb.erf_args.begin(), tb.erf_args.end());
      std::sort(erfs.begin(), erfs.end());
      out.insert(SigmaTerm{ta.mu + tb.mu, ta.gauss_rate + tb.gauss_rate, std::move(erfs)},
                 ca * cb);
    }
  }
  return out;
}

SigmaExpr product(std::span<const SigmaExpr> factors) {
  if (factors.empty()) throw Error("product of an empty factor list");
  SigmaExpr out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = product(out, factors[i]);
  return out;
}

std::vector<Rational> small_sigma_series(int n, int m, const Rational& a, const Rational& b,
                                         const Rational& ap, const Rational& bp, int order) {
  check_interval(a, b);
  check_interval(ap, bp);
  if (order < 0) throw Error("series order must be nonnegative");

  auto moment = [](const Rational& lo, const Rational& hi, int p) {
    return (rat_pow(hi, p + 1) - rat_pow(lo, p + 1)) / Rational(p + 1);
  };

  std::vector<Rational> out;
  out.reserve(order + 1);
  BiPoly diff_pow = BiPoly::constant(Rational(1));  // (x-y)^{2k}
  const BiPoly diff_sq = BiPoly::monomial(2, 0, Rational(1)) -
                         BiPoly::monomial(1, 1, Rational(2)) + BiPoly::monomial(0, 2, Rational(1));
  Rational factorial(1);
  for (int k = 0; k <= order; ++k) {
    if (k > 0) {
      diff_pow = diff_pow * diff_sq;
      factorial *= k;
    }
    Rational integral = 0;
    for (const auto& [key, c] : diff_pow.terms())
      integral += c * moment(a, b, n + key.first) * moment(ap, bp, m + key.second);
    Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    out.push_back(sign * integral / factorial);
  }
  return out;
}

namespace {

// Exact Laurent series of an expression in t = sigma^2, offset so index 0 is
// the most negative power that can occur.
struct ExactSeries {
  std::map<int, Rational> coeff;  // exponent of t -> coefficient

  void add(int e, const Rational& c) {
    auto it = coeff.find(e);
    if (it == coeff.end()) {
      if (c != 0) coeff.emplace(e, c);
      return;
    }
    it->second += c;
    if (it->second == 0) coeff.erase(it);
  }
};

int series_terms_needed(double scale_times_t0, int min_terms) {
  // Smallest K with scale^{K+1}/(K+1)! below the double roundoff floor.
  double log_term = 0;
  int k = 0;
  double ls = std::log(std::max(scale_times_t0, 1e-30));
  while (k < 400) {
    ++k;
    log_term += ls - std::log(static_cast<double>(k));
    if (k >= min_terms && log_term < std::log(1e-19)) break;
  }
  return std::max(k, min_terms);
}

}  // namespace

SigmaEvaluator::SigmaEvaluator(const SigmaExpr& e, double sigma0, int min_terms)
    : sigma0_(sigma0) {
  double max_scale = 0;
  for (const auto& [t, c] : e.terms()) {
    DirectTerm dt;
    dt.coeff = to_double(c);
    dt.mu = t.mu;
    dt.gauss_rate = to_double(t.gauss_rate);
    double scale = dt.gauss_rate;
    for (const auto& d : t.erf_args) {
      double dd = to_double(d);
      dt.erf_args.push_back(dd);
      scale += dd * dd;
    }
    max_scale = std::max(max_scale, scale);
    direct_.push_back(std::move(dt));
  }

  const int terms = series_terms_needed(max_scale * sigma0 * sigma0, min_terms);
  ExactSeries total;
  for (const auto& [t, c] : e.terms()) {
    // c * sigma^{r-mu} * prod_j delta_j * [gauss series * erf even parts](t)
    const int r = t.erf_count();
    if ((t.mu - r) % 2 != 0)
      throw Error("series evaluation requires the mu - r parity invariant");
    const int shift = (r - t.mu) / 2;
    const int need = terms + std::max(0, -shift);

    std::vector<Rational> acc(need + 1, Rational(0));
    acc[0] = c;
    for (const auto& d : t.erf_args) acc[0] *= d;

    auto convolve = [&](auto next_coeff) {
      std::vector<Rational> out(need + 1, Rational(0));
      for (int k = 0; k <= need; ++k) {
        Rational g = next_coeff(k);
        if (g != 0)
          for (int i = 0; i + k <= need; ++i)
            if (acc[i] != 0) out[i + k] += acc[i] * g;
      }
      acc = std::move(out);
    };

    if (t.gauss_rate != 0) {
      const Rational G = t.gauss_rate;
      convolve([&](int k) {
        Rational num = rat_pow(-G, k);
        Rational fact(1);
        for (int i = 2; i <= k; ++i) fact *= i;
        return num / fact;
      });
    }
    for (const auto& d : t.erf_args) {
      const Rational d2 = d * d;
      convolve([&](int k) {
        // Erf(delta sigma) = delta sigma * sum_k (-delta^2 t)^k / (k! (2k+1))
        Rational num = rat_pow(-d2, k);
        Rational fact(1);
        for (int i = 2; i <= k; ++i) fact *= i;
        return num / (fact * Rational(2 * k + 1));
      });
    }
    for (int i = 0; i <= need; ++i)
      if (acc[i] != 0) total.add(i + shift, acc[i]);
  }

  int max_exp = 0;
  for (const auto& [e2, c] : total.coeff) {
    if (e2 < 0) throw Error("singular sigma powers do not cancel in this expression");
    max_exp = std::max(max_exp, e2);
  }
  series_.assign(std::min(max_exp, terms) + 1, 0.0);
  for (const auto& [e2, c] : total.coeff)
    if (e2 < static_cast<int>(series_.size())) series_[e2] = to_double(c);
}

double SigmaEvaluator::operator()(double sigma) const {
  if (sigma < sigma0_) {
    const double t = sigma * sigma;
    double v = 0;
    for (auto it = series_.rbegin(); it != series_.rend(); ++it) v = v * t + *it;
    return v;
  }
  double total = 0;
  for (const auto& dt : direct_) {
    double v = dt.coeff * std::exp(-sigma * sigma * dt.gauss_rate);
    for (double d : dt.erf_args) v *= erf_value(sigma * d);
    if (dt.mu != 0) v *= std::pow(sigma, -dt.mu);
    total += v;
  }
  return total;
}

double eval_sigma_expr(const SigmaExpr& e, double sigma, double sigma0) {
  if (sigma <= 0) throw Error("sigma must be positive");
  return SigmaEvaluator(e, sigma0)(sigma);
}

}  // namespace newtpot
