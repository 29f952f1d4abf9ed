#include "newtpot/renorm.hpp"

#include "newtpot/errors.hpp"

namespace newtpot {

SigmaExpr rewrite_step(const SigmaTerm& t, const Rational& coeff) {
  if (t.mu < 2) throw NotRewritable();
  const Rational nu(t.mu - 1);
  SigmaExpr out;

  if (t.gauss_rate != 0) {
    out.insert(SigmaTerm{t.mu - 2, t.gauss_rate, t.erf_args},
               Rational(-2) * t.gauss_rate * coeff / nu);
  }
  for (std::size_t j = 0; j < t.erf_args.size(); ++j) {
    const Rational& d = t.erf_args[j];
    std::vector<Rational> rest;
    rest.reserve(t.erf_args.size() - 1);
    for (std::size_t l = 0; l < t.erf_args.size(); ++l)
      if (l != j) rest.push_back(t.erf_args[l]);
    out.insert(SigmaTerm{t.mu - 1, t.gauss_rate + d * d, std::move(rest)}, coeff * d / nu);
  }
  return out;
}

SigmaExpr renormalize(const SigmaExpr& e) {
  // The term order is keyed by mu first, so the largest-mu term sits at the
  // back of the worklist; its children have strictly smaller mu.
  SigmaExpr::TermMap work = e.terms();
  SigmaExpr done;
  while (!work.empty()) {
    auto it = std::prev(work.end());
    if (it->first.mu <= 1) {
      for (const auto& [term, coeff] : work) done.insert(term, coeff);
      break;
    }
    SigmaTerm t = it->first;
    Rational c = it->second;
    work.erase(it);
    for (const auto& [child, coeff] : rewrite_step(t, c).terms()) {
      auto [wit, fresh] = work.try_emplace(child, coeff);
      if (!fresh) {
        wit->second += coeff;
        if (wit->second == 0) work.erase(wit);
      }
    }
  }
  return done;
}

TerminalClass classify_term(const SigmaTerm& t) {
  const int r = t.erf_count();
  if (t.mu > 1 || (t.mu - r) % 2 != 0)
    throw Error("term is not in renormalized form");
  const bool gauss = t.gauss_rate > 0;
  if (gauss) {
    if (t.mu == 0 && r == 0) return TerminalClass::I1;
    if (t.mu == 1 && r == 1) return TerminalClass::I2;
    if (t.mu == 0 && r == 2) return TerminalClass::I3;
    return TerminalClass::ResidualConvergent;
  }
  if (t.mu == 1 && r == 1) return TerminalClass::LogLedger;
  if (t.mu == 0 && r == 0) return TerminalClass::DivergentConstant;
  return TerminalClass::DivergentAtInfinity;
}

std::map<TerminalClass, SigmaExpr> classify_terms(const SigmaExpr& e) {
  std::map<TerminalClass, SigmaExpr> out;
  for (const auto& [t, c] : e.terms()) out[classify_term(t)].insert(t, c);
  return out;
}

const char* terminal_class_name(TerminalClass c) {
  switch (c) {
    case TerminalClass::I1: return "I1";
    case TerminalClass::I2: return "I2";
    case TerminalClass::I3: return "I3";
    case TerminalClass::LogLedger: return "LogLedger";
    case TerminalClass::ResidualConvergent: return "ResidualConvergent";
    case TerminalClass::DivergentAtInfinity: return "DivergentAtInfinity";
    case TerminalClass::DivergentConstant: return "DivergentConstant";
  }
  return "?";
}

}  // namespace newtpot
