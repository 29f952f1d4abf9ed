#include "newtpot/closedform.hpp"

#include <algorithm>
#include <cmath>

#include "newtpot/errors.hpp"
#include "newtpot/renorm.hpp"
#include "newtpot/surd.hpp"

namespace newtpot {

const char* status_name(ResultStatus s) {
  switch (s) {
    case ResultStatus::Elementary: return "elementary";
    case ResultStatus::Mixed: return "mixed";
    case ResultStatus::NumericOnly: return "numeric-only";
    case ResultStatus::Divergent: return "divergent";
  }
  return "?";
}

double ClosedAtom::value() const {
  const double c = to_double(coeff);
  switch (kind) {
    case AtomKind::RationalConst:
      return c;
    case AtomKind::SurdAtom:
      return c * std::sqrt(to_double(p1));
    case AtomKind::LogRational:
      return c * std::log(to_double(p1));
    case AtomKind::LogOnly: {
      const double g = to_double(p1), d = to_double(p2);
      return c * std::log(d + std::sqrt(g + d * d));
    }
    case AtomKind::LogPair: {
      const double g = to_double(p1), d = to_double(p2);
      return c * (std::log(d + std::sqrt(g + d * d)) - std::log(std::sqrt(g)));
    }
    case AtomKind::ArctanAtom: {
      const double g = to_double(p1), d2 = to_double(p2), d3 = to_double(p3);
      return c / (2 * std::sqrt(g)) *
             std::atan(d2 * d3 / (std::sqrt(g) * std::sqrt(g + d2 * d2 + d3 * d3)));
    }
    case AtomKind::PiSurd:
      return c * std::sqrt(to_double(p1)) * M_PI;
    case AtomKind::GenLog:
      return c * std::log(to_double(p1) + to_double(p2) * std::sqrt(to_double(p3)));
    case AtomKind::GenArctan:
      return c * std::atan(to_double(p1) * std::sqrt(to_double(p2)));
  }
  return 0;
}

ClosedAtom translate_term(const SigmaTerm& t, const Rational& coeff) {
  switch (classify_term(t)) {
    case TerminalClass::I1:
      // c / sqrt(G) = c * sqrt(1/G)
      return {AtomKind::SurdAtom, coeff, Rational(1) / t.gauss_rate, 0, 0};
    case TerminalClass::I2:
      return {AtomKind::LogPair, coeff, t.gauss_rate, t.erf_args[0], 0};
    case TerminalClass::I3:
      return {AtomKind::ArctanAtom, coeff, t.gauss_rate, t.erf_args[0], t.erf_args[1]};
    default:
      throw NotTranslatable();
  }
}

std::pair<std::vector<ClosedAtom>, Rational> ledger_resolve(const SigmaExpr& bucket) {
  std::vector<ClosedAtom> atoms;
  Rational ledger(0);
  for (const auto& [t, c] : bucket.terms()) {
    if (classify_term(t) != TerminalClass::LogLedger)
      throw Error("ledger_resolve expects only LogLedger terms");
    atoms.push_back({AtomKind::LogRational, c, 2 * t.erf_args[0], 0, 0});
    ledger += c;
  }
  return {std::move(atoms), std::move(ledger)};
}

namespace {

int kind_rank(AtomKind k) {
  switch (k) {
    case AtomKind::RationalConst: return 0;
    case AtomKind::SurdAtom: return 1;
    case AtomKind::LogRational: return 2;
    case AtomKind::LogOnly: return 3;
    case AtomKind::LogPair: return 4;
    case AtomKind::ArctanAtom: return 5;
    case AtomKind::PiSurd: return 6;
    case AtomKind::GenLog: return 7;
    case AtomKind::GenArctan: return 8;
  }
  return 9;
}

// Deterministic emission order: constants, surds, logs by (delta, G),
// arctans by (G, d2, d3), pi multiples, then the generic reference forms.
bool atom_less(const ClosedAtom& a, const ClosedAtom& b) {
  if (kind_rank(a.kind) != kind_rank(b.kind)) return kind_rank(a.kind) < kind_rank(b.kind);
  switch (a.kind) {
    case AtomKind::LogOnly:
    case AtomKind::LogPair:
      return std::tie(a.p2, a.p1) < std::tie(b.p2, b.p1);
    default:
      return std::tie(a.p1, a.p2, a.p3) < std::tie(b.p1, b.p2, b.p3);
  }
}

class Canonicalizer {
 public:
  void add(const ClosedAtom& atom) {
    if (atom.coeff == 0) return;
    switch (atom.kind) {
      case AtomKind::RationalConst:
        const_ += atom.coeff;
        return;
      case AtomKind::SurdAtom:
        add_surd(atom.coeff, atom.p1);
        return;
      case AtomKind::LogRational:
        add_log_rational(atom.coeff, atom.p1);
        return;
      case AtomKind::LogOnly:
        add_log_only(atom.coeff, atom.p1, atom.p2);
        return;
      case AtomKind::LogPair:
        add_log_pair(atom.coeff, atom.p1, atom.p2);
        return;
      case AtomKind::ArctanAtom:
        add_arctan(atom.coeff, atom.p1, atom.p2, atom.p3);
        return;
      case AtomKind::PiSurd:
        add_pi(atom.coeff, atom.p1);
        return;
      case AtomKind::GenLog:
        combine(gen_log_, {atom.p1, atom.p2, atom.p3}, atom.coeff);
        return;
      case AtomKind::GenArctan:
        combine(gen_arctan_, {atom.p1, atom.p2, Rational(0)}, atom.coeff);
        return;
    }
  }

  std::vector<ClosedAtom> finish() {
    std::vector<ClosedAtom> out;
    if (const_ != 0) out.push_back({AtomKind::RationalConst, const_, 0, 0, 0});
    for (const auto& [rad, c] : surds_)
      if (c != 0) out.push_back({AtomKind::SurdAtom, c, rad, 0, 0});
    for (const auto& [arg, c] : logs_)
      if (c != 0) out.push_back({AtomKind::LogRational, c, arg, 0, 0});
    for (const auto& [key, c] : log_only_)
      if (c != 0) out.push_back({AtomKind::LogOnly, c, key.first, key.second, 0});
    for (const auto& [key, c] : log_pair_)
      if (c != 0) out.push_back({AtomKind::LogPair, c, key.first, key.second, 0});
    for (const auto& [key, c] : arctan_)
      if (c != 0)
        out.push_back({AtomKind::ArctanAtom, c, std::get<0>(key), std::get<1>(key),
                       std::get<2>(key)});
    for (const auto& [rad, c] : pi_)
      if (c != 0) out.push_back({AtomKind::PiSurd, c, rad, 0, 0});
    for (const auto& [key, c] : gen_log_)
      if (c != 0)
        out.push_back({AtomKind::GenLog, c, std::get<0>(key), std::get<1>(key), std::get<2>(key)});
    for (const auto& [key, c] : gen_arctan_)
      if (c != 0) out.push_back({AtomKind::GenArctan, c, std::get<0>(key), std::get<1>(key), 0});
    std::sort(out.begin(), out.end(), atom_less);
    return out;
  }

 private:
  using Key3 = std::tuple<Rational, Rational, Rational>;

  static void combine(std::map<Key3, Rational>& into, Key3 key, const Rational& c) {
    auto it = into.find(key);
    if (it == into.end())
      into.emplace(std::move(key), c);
    else
      it->second += c;
  }

  void add_surd(const Rational& c, const Rational& radicand) {
    Surd s = surd_simplify({c, radicand});
    if (s.coeff == 0) return;
    if (s.radicand == 1) {
      const_ += s.coeff;
      return;
    }
    surds_[s.radicand] += s.coeff;
  }

  void add_pi(const Rational& c, const Rational& radicand) {
    Surd s = surd_simplify({c, radicand});
    if (s.coeff == 0) return;
    pi_[s.radicand] += s.coeff;
  }

  void add_log_rational(Rational c, Rational arg) {
    if (arg <= 0) throw Error("log of a nonpositive rational");
    if (arg == 1 || c == 0) return;
    if (numerator(arg) < denominator(arg)) {  // log(p/q) = -log(q/p), keep arg > 1
      arg = Rational(1) / arg;
      c = -c;
    }
    // log(p/q) = sum e_f log f over the factorizations of p and q
    for (const auto& [f, e] : trial_factor(numerator(arg))) logs_[Rational(f)] += c * e;
    if (denominator(arg) != 1)
      for (const auto& [f, e] : trial_factor(denominator(arg))) logs_[Rational(f)] -= c * e;
  }

  void add_log_only(Rational c, const Rational& g, Rational d) {
    if (d == 0) throw Error("log atom requires delta != 0");
    if (d < 0) {
      // log(d + s) = log(G) - log(-d + s)
      add_log_rational(c, g);
      c = -c;
      d = -d;
    }
    if (auto s = exact_sqrt(g + d * d)) {
      add_log_rational(c, d + *s);
      return;
    }
    log_only_[{g, d}] += c;
  }

  void add_log_pair(Rational c, const Rational& g, Rational d) {
    if (g <= 0 || d == 0) throw Error("log atom requires G > 0 and delta != 0");
    if (d < 0) {  // value is odd in delta
      c = -c;
      d = -d;
    }
    if (auto s = exact_sqrt(g + d * d)) {
      // both pieces are logs of rationals
      add_log_rational(c, d + *s);
      add_log_rational(Rational(-c) / 2, g);
      return;
    }
    if (auto r = exact_sqrt(g)) {
      // only the -log sqrt(G) piece is rational; split it off
      add_log_rational(-c, *r);
      log_only_[{g, d}] += c;
      return;
    }
    log_pair_[{g, d}] += c;
  }

  void add_arctan(Rational c, const Rational& g, Rational d2, Rational d3) {
    if (g <= 0 || d2 == 0 || d3 == 0) throw Error("arctan atom requires G > 0, deltas != 0");
    if (sign_of(d2) * sign_of(d3) < 0) c = -c;  // arctan argument is odd in d2*d3
    d2 = rat_abs(d2);
    d3 = rat_abs(d3);
    if (d3 < d2) std::swap(d2, d3);
    // tau = d2 d3 / (sqrt(G) sqrt(G + d2^2 + d3^2)); recognize tau^2 giving
    // the angles pi/6, pi/4, pi/3.
    const Rational tau2 = (d2 * d2 * d3 * d3) / (g * (g + d2 * d2 + d3 * d3));
    Rational angle_over_pi(0);
    if (tau2 == Rational(1, 3))
      angle_over_pi = Rational(1, 6);
    else if (tau2 == 1)
      angle_over_pi = Rational(1, 4);
    else if (tau2 == 3)
      angle_over_pi = Rational(1, 3);
    if (angle_over_pi != 0) {
      // c/(2 sqrt(G)) * angle = (c * angle_over_pi / (2G)) * sqrt(G) * pi
      add_pi(c * angle_over_pi / (2 * g), g);
      return;
    }
    combine(arctan_, {g, d2, d3}, c);
  }

  Rational const_{0};
  std::map<Rational, Rational> surds_;     // integer radicand -> coeff
  std::map<Rational, Rational> logs_;      // rational argument (> 1) -> coeff
  std::map<std::pair<Rational, Rational>, Rational> log_only_;  // (G, delta)
  std::map<std::pair<Rational, Rational>, Rational> log_pair_;  // (G, delta)
  std::map<Key3, Rational> arctan_;        // (G, d2, d3)
  std::map<Rational, Rational> pi_;        // radicand -> coeff
  std::map<Key3, Rational> gen_log_;
  std::map<Key3, Rational> gen_arctan_;
};

}  // namespace

ClosedExpr canonicalize(const ClosedExpr& e) {
  Canonicalizer canon;
  for (const auto& atom : e.atoms) canon.add(atom);

  ClosedExpr out;
  out.atoms = canon.finish();
  out.ledger = e.ledger;

  // Merge residual coefficients on equal terms, canonical order.
  std::map<SigmaTerm, Rational> res;
  for (const auto& r : e.residuals) res[r.term] += r.coeff;
  for (const auto& [t, c] : res)
    if (c != 0) out.residuals.push_back({t, c});

  if (e.status == ResultStatus::NumericOnly || e.status == ResultStatus::Divergent)
    out.status = e.status;
  else if (out.ledger != 0)
    out.status = ResultStatus::Divergent;
  else
    out.status = out.residuals.empty() ? ResultStatus::Elementary : ResultStatus::Mixed;
  return out;
}

QuadratureResult price_residual(const Residual& r, double tol) {
  const double c = to_double(r.coeff);
  const int mu = r.term.mu;
  const double g = to_double(r.term.gauss_rate);
  std::vector<double> deltas;
  for (const auto& d : r.term.erf_args) deltas.push_back(to_double(d));

  auto f = [&](double s) {
    double v = std::exp(-s * s * g);
    for (double d : deltas) v *= erf_value(s * d);
    if (mu == 1)
      v /= s;
    else if (mu != 0)
      v *= std::pow(s, -mu);
    return v;
  };
  constexpr double kTwoOverSqrtPi = 1.1283791670955125738961589031215;
  QuadratureResult q = integrate_halfline(f, tol);
  q.value *= kTwoOverSqrtPi * c;
  q.error_estimate *= kTwoOverSqrtPi * std::abs(c);
  return q;
}

EvalResult evaluate_numeric(const ClosedExpr& e, int target_digits) {
  if (e.status == ResultStatus::Divergent || e.ledger != 0) throw NotFinite();
  const double tol = std::pow(10.0, -std::clamp(target_digits, 1, 13)) / 10;

  EvalResult out;
  double mag = 0;
  for (const auto& atom : e.atoms) {
    const double v = atom.value();
    out.value += v;
    mag += std::abs(v);
  }
  for (const auto& r : e.residuals) {
    QuadratureResult q = price_residual(r, tol);
    out.value += q.value;
    out.error += q.error_estimate;
    mag += std::abs(q.value);
  }
  out.error += mag * 4e-16;  // roundoff slack of the summation itself
  return out;
}

}  // namespace newtpot
