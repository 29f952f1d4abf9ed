#include "newtpot/moments.hpp"

#include <mutex>
#include <vector>

namespace newtpot {

namespace {

// One lock guards all moment caches; construction is cheap and reused often.
std::mutex g_cache_mutex;

struct UVCache {
  std::vector<BiPoly> u, v;
};

UVCache& uv_cache_locked(int n) {
  static UVCache cache;
  if (cache.u.empty()) {
    cache.u.push_back(BiPoly());                       // u_0 = 0
    cache.v.push_back(BiPoly::constant(Rational(1)));  // v_0 = 1
  }
  const BiPoly y = BiPoly::monomial(0, 1, Rational(1));
  while (static_cast<int>(cache.u.size()) <= n) {
    int k = static_cast<int>(cache.u.size()) - 1;  // have indices 0..k, build k+1
    Rational half_k(k, 2);
    BiPoly u_next = y * cache.u[k];
    BiPoly v_next = y * cache.v[k];
    if (k >= 1) {
      u_next += half_k * cache.u[k - 1];
      v_next += half_k * cache.v[k - 1];
    }
    u_next -= BiPoly::monomial(k, 0, Rational(1, 2));
    cache.u.push_back(std::move(u_next));
    cache.v.push_back(std::move(v_next));
  }
  return cache;
}

}  // namespace

const BiPoly& u_poly(int n) {
  std::scoped_lock lock(g_cache_mutex);
  return uv_cache_locked(n).u[n];
}

const BiPoly& v_poly(int n) {
  std::scoped_lock lock(g_cache_mutex);
  return uv_cache_locked(n).v[n];
}

PrimitivePair primitive_A(int n) { return {u_poly(n), v_poly(n)}; }

PrimitivePair primitive_B(int n) {
  Rational inv(1, n + 1);
  BiPoly gauss = Rational(-1) * (inv * u_poly(n + 1));
  BiPoly erf = inv * (BiPoly::monomial(n + 1, 0, Rational(1)) - v_poly(n + 1));
  return {gauss, erf};
}

const PrimitivePair& double_primitive(int n, int m) {
  std::scoped_lock lock(g_cache_mutex);
  static std::map<std::pair<int, int>, PrimitivePair> cache;
  auto it = cache.find({n, m});
  if (it != cache.end()) return it->second;

  auto& uv = uv_cache_locked(n + m + 2);
  BiPoly p, q;
  const BiPoly y_m = BiPoly::monomial(0, m, Rational(1));

  // u-branch: expand u_n(x,y) y^m, replace y^k by A_k(y,x).
  for (const auto& [k, coef] : (uv.u[n] * y_m).collect_y()) {
    p += coef * uv.u[k].swap_vars();
    q -= coef * uv.v[k].swap_vars();
  }
  // v-branch: expand v_n(y) y^m, replace y^k by -B_k(y,x).
  for (const auto& [k, coef] : (uv.v[n] * y_m).collect_y()) {
    Rational inv(1, k + 1);
    p += inv * (coef * uv.u[k + 1].swap_vars());
    q += inv * (coef * (BiPoly::monomial(0, k + 1, Rational(1)) - uv.v[k + 1].swap_vars()));
  }
  return cache.emplace(std::make_pair(n, m), PrimitivePair{std::move(p), std::move(q)})
      .first->second;
}

const PrimitivePair& force_double_primitive(int n, int m) {
  std::scoped_lock lock(g_cache_mutex);
  static std::map<std::pair<int, int>, PrimitivePair> cache;
  auto it = cache.find({n, m});
  if (it != cache.end()) return it->second;

  // Integrating x^n (x-y) e^{-(x-y)^2} wrt x first gives
  //   ((n/2) u_{n-1}(x,y) - x^n/2) e^{-(x-y)^2} - (n/2) v_{n-1}(y) Erf(y-x),
  // which already lost two polynomial degrees; then integrate wrt y as in
  // double_primitive.
  auto& uv = uv_cache_locked(n + m + 2);
  BiPoly p, q;
  const BiPoly y_m = BiPoly::monomial(0, m, Rational(1));
  const Rational half_n(n, 2);

  if (n >= 1) {
    for (const auto& [k, coef] : (half_n * (uv.u[n - 1] * y_m)).collect_y()) {
      p += coef * uv.u[k].swap_vars();
      q -= coef * uv.v[k].swap_vars();
    }
  }
  {
    // the -(x^n/2) y^m part, replaced through A_m(y,x)
    BiPoly coef = BiPoly::monomial(n, 0, Rational(-1, 2)) * y_m;
    for (const auto& [k, cpoly] : coef.collect_y()) {
      p += cpoly * uv.u[k].swap_vars();
      q -= cpoly * uv.v[k].swap_vars();
    }
  }
  if (n >= 1) {
    for (const auto& [k, coef] : (half_n * (uv.v[n - 1] * y_m)).collect_y()) {
      Rational inv(1, k + 1);
      p += inv * (coef * uv.u[k + 1].swap_vars());
      q += inv * (coef * (BiPoly::monomial(0, k + 1, Rational(1)) - uv.v[k + 1].swap_vars()));
    }
  }
  return cache.emplace(std::make_pair(n, m), PrimitivePair{std::move(p), std::move(q)})
      .first->second;
}

}  // namespace newtpot
