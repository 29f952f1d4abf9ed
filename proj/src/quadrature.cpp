#include "newtpot/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "newtpot/errors.hpp"
#include "newtpot/problem.hpp"
#include "newtpot/sigma.hpp"

namespace newtpot {

double erf_value(double xi) {
  constexpr double kHalfSqrtPi = 0.8862269254527580136490837416706;
  return kHalfSqrtPi * std::erf(xi);
}

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value = 0;
  double error = 0;
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = kWgk[7] * fc;
  double gauss = kWg[3] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk[i];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[i] * fsum;
    if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
  }
  kron *= h;
  gauss *= h;
  const double diff = std::abs(kron - gauss);
  // Scaled error heuristic as in QUADPACK: sharpens fast-converging panels.
  double err = diff;
  if (diff > 0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
  return {kron, err};
}

struct Panel {
  double a, b;
  PanelEstimate est;
  bool operator<(const Panel& rhs) const { return est.error < rhs.est.error; }
};

QuadratureResult adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          long budget, long* evals_used) {
  std::priority_queue<Panel> queue;
  long evals = 15;
  queue.push({a, b, gk15(f, a, b)});
  double value = queue.top().est.value;
  double error = queue.top().est.error;

  while (error > tol * std::max(1.0, std::abs(value)) && evals + 30 <= budget) {
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {  // interval exhausted by roundoff
      queue.push(worst);
      break;
    }
    Panel left{worst.a, mid, gk15(f, worst.a, mid)};
    Panel right{mid, worst.b, gk15(f, mid, worst.b)};
    evals += 30;
    value += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    queue.push(left);
    queue.push(right);
  }

  // Re-sum for a stable total.
  value = 0;
  error = 0;
  while (!queue.empty()) {
    value += queue.top().est.value;
    error += queue.top().est.error;
    queue.pop();
  }
  if (evals_used) *evals_used += evals;
  return {value, error, evals};
}

}  // namespace

QuadratureResult integrate_interval(const std::function<double(double)>& f, double a, double b,
                                    double tol) {
  long evals = 0;
  QuadratureResult r = adaptive(f, a, b, tol, kQuadBudget, &evals);
  r.evaluations = evals;
  if (r.error_estimate > std::max(tol, 1e-14) * std::max(1.0, std::abs(r.value)) * 100)
    throw QuadratureFailure("adaptive quadrature did not converge on the interval");
  return r;
}

QuadratureResult integrate_halfline(const std::function<double(double)>& f, double tol) {
  long evals = 0;
  QuadratureResult head = adaptive(f, 0.0, 1.0, tol / 2, kQuadBudget / 2, &evals);
  auto tail_map = [&f](double u) { return f(1.0 / u) / (u * u); };
  QuadratureResult tail = adaptive(tail_map, 0.0, 1.0, tol / 2, kQuadBudget / 2, &evals);

  QuadratureResult out;
  out.value = head.value + tail.value;
  out.error_estimate = head.error_estimate + tail.error_estimate;
  out.evaluations = evals;
  if (out.error_estimate > std::max(tol, 1e-14) * std::max(1.0, std::abs(out.value)) * 100)
    throw QuadratureFailure("adaptive quadrature did not converge on the half-line");
  return out;
}

namespace {

constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215;

}  // namespace

QuadratureResult numeric_fallback(const ProblemSpec& problem) {
  FactorSet fs = build_factors(problem);

  std::vector<SigmaEvaluator> evals;
  evals.reserve(fs.factors.size());
  for (const auto& f : fs.factors) evals.emplace_back(f);

  const double rho = to_double(fs.rho);
  auto integrand = [&](double sigma) {
    double v = 1.0;
    for (std::size_t i = 0; i < evals.size(); ++i) {
      const double fv = evals[i](sigma);
      const int mult = fs.multiplicity[i];
      if (mult == 1) {
        v *= fv;
      } else if (fv == 0.0) {
        return 0.0;
      } else {
        // Power in the log domain; e^{-sigma^2}-sized factors raised to
        // large powers underflow term-by-term otherwise.
        const double lg = static_cast<double>(mult) * std::log(std::abs(fv));
        if (lg < -745.0) return 0.0;
        double p = std::exp(lg);
        if (mult % 2 == 1 && fv < 0) p = -p;
        v *= p;
      }
    }
    if (fs.r3_weight) v *= 2.0 * sigma * sigma;
    if (rho > 0) v *= std::exp(-sigma * sigma * rho * rho);
    return v;
  };

  QuadratureResult r = integrate_halfline(integrand, kDefaultQuadTol);
  r.value *= kTwoOverSqrtPi;
  r.error_estimate *= kTwoOverSqrtPi;
  return r;
}

std::pair<bool, bool> verify_table_identities(const Rational& a, const Rational& b,
                                              const Rational& c, double tol) {
  if (a == 0) throw Error("identity check requires a != 0");
  const double ad = to_double(a), bd = to_double(b), cd = to_double(c);

  auto f1 = [&](double x) { return std::exp(-x * x * ad * ad) * erf_value(bd * x) / x; };
  double lhs1 = kTwoOverSqrtPi * integrate_halfline(f1, tol / 10).value;
  double rhs1 = std::log(bd + std::sqrt(ad * ad + bd * bd)) - std::log(std::sqrt(ad * ad));
  bool ok1 = std::abs(lhs1 - rhs1) <= tol * std::max(1.0, std::abs(rhs1));

  auto f2 = [&](double x) {
    return std::exp(-x * x * ad * ad) * erf_value(bd * x) * erf_value(cd * x);
  };
  double lhs2 = kTwoOverSqrtPi * integrate_halfline(f2, tol / 10).value;
  double rhs2 =
      std::atan(bd * cd / (ad * std::sqrt(ad * ad + bd * bd + cd * cd))) / (2.0 * ad);
  bool ok2 = std::abs(lhs2 - rhs2) <= tol * std::max(1.0, std::abs(rhs2));

  return {ok1, ok2};
}

}  // namespace newtpot
