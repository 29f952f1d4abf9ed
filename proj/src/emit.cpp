#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "newtpot/closedform.hpp"
#include "newtpot/surd.hpp"

namespace newtpot {

namespace {

// "" for 1, "24*" for integers, "(81/4)*" for fractions; sign handled by the
// summand joiner.
std::string coeff_prefix(const Rational& abs_coeff) {
  if (abs_coeff == 1) return "";
  if (denominator(abs_coeff) == 1) return to_string(abs_coeff) + "*";
  return "(" + to_string(abs_coeff) + ")*";
}

std::string latex_rational(const Rational& q) {
  if (denominator(q) == 1) return to_string(q);
  std::string n = numerator(q).str();
  bool neg = false;
  if (!n.empty() && n[0] == '-') {
    neg = true;
    n = n.substr(1);
  }
  return std::string(neg ? "-" : "") + "\\frac{" + n + "}{" + denominator(q).str() + "}";
}

std::string latex_coeff_prefix(const Rational& abs_coeff) {
  if (abs_coeff == 1) return "";
  return latex_rational(abs_coeff) + "\\,";
}

std::string surd_text(const Rational& coeff, const Rational& radicand) {
  return surd_to_string(surd_simplify({coeff, radicand}));
}

std::string latex_surd(const Rational& abs_coeff, const Rational& radicand) {
  Surd s = surd_simplify({abs_coeff, radicand});
  if (s.radicand == 1) return latex_rational(s.coeff);
  std::string root = "\\sqrt{" + to_string(s.radicand) + "}";
  if (s.coeff == 1) return root;
  Int n = numerator(s.coeff), d = denominator(s.coeff);
  if (d == 1) return n.str() + root;
  return "\\frac{" + (n == 1 ? root : n.str() + root) + "}{" + d.str() + "}";
}

// One rendered summand: (negative?, body without sign).
struct Piece {
  bool negative;
  std::string body;
};

std::string join_pieces(const std::vector<Piece>& pieces) {
  if (pieces.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& p : pieces) {
    if (first) {
      if (p.negative) out += "-";
      first = false;
    } else {
      out += p.negative ? " - " : " + ";
    }
    out += p.body;
  }
  return out;
}

std::string sqrt_text(const Rational& radicand) {
  Surd s = surd_simplify({Rational(1), radicand});
  return surd_to_string(s);
}

std::string inner_log_arg_text(const Rational& delta, const Rational& s_squared) {
  // delta + sqrt(s_squared)
  std::string root = sqrt_text(s_squared);
  if (delta == 0) return root;
  return to_string(delta) + "+" + root;
}

void atom_pieces_text(const ClosedAtom& a, std::vector<Piece>& out) {
  const bool neg = a.coeff < 0;
  const Rational c = rat_abs(a.coeff);
  switch (a.kind) {
    case AtomKind::RationalConst:
      out.push_back({neg, to_string(c)});
      return;
    case AtomKind::SurdAtom:
      out.push_back({neg, surd_text(c, a.p1)});
      return;
    case AtomKind::LogRational:
      out.push_back({neg, coeff_prefix(c) + "log(" + to_string(a.p1) + ")"});
      return;
    case AtomKind::LogOnly:
      out.push_back(
          {neg, coeff_prefix(c) + "log(" + inner_log_arg_text(a.p2, a.p1 + a.p2 * a.p2) + ")"});
      return;
    case AtomKind::LogPair:
      out.push_back(
          {neg, coeff_prefix(c) + "log(" + inner_log_arg_text(a.p2, a.p1 + a.p2 * a.p2) + ")"});
      out.push_back({!neg, coeff_prefix(c) + "log(" + sqrt_text(a.p1) + ")"});
      return;
    case AtomKind::ArctanAtom: {
      // display coefficient c/(2 sqrt(G)) and argument as simplified surds
      const Rational sum = a.p1 + a.p2 * a.p2 + a.p3 * a.p3;
      std::string front = surd_text(c / (2 * a.p1), a.p1);
      std::string arg = surd_text(a.p2 * a.p3 / (a.p1 * sum), a.p1 * sum);
      out.push_back({neg, (front == "1" ? "" : front + "*") + "arctan(" + arg + ")"});
      return;
    }
    case AtomKind::PiSurd: {
      Surd s = surd_simplify({c, a.p1});
      std::string body = s.radicand == 1 ? coeff_prefix(s.coeff) + "pi"
                                         : surd_to_string(s) + "*pi";
      out.push_back({neg, body});
      return;
    }
    case AtomKind::GenLog: {
      std::string root = sqrt_text(a.p3);
      std::string v = a.p2 == 1 ? root : to_string(a.p2) + "*" + root;
      std::string arg = a.p1 == 0 ? v : to_string(a.p1) + "+" + v;
      out.push_back({neg, coeff_prefix(c) + "log(" + arg + ")"});
      return;
    }
    case AtomKind::GenArctan: {
      std::string root = sqrt_text(a.p2);
      std::string v = a.p1 == 1 ? root : to_string(a.p1) + "*" + root;
      out.push_back({neg, coeff_prefix(c) + "arctan(" + v + ")"});
      return;
    }
  }
}

std::string latex_inner_log_arg(const Rational& delta, const Rational& s_squared) {
  std::string root = latex_surd(Rational(1), s_squared);
  if (delta == 0) return root;
  return latex_rational(delta) + "+" + root;
}

void atom_pieces_latex(const ClosedAtom& a, std::vector<Piece>& out) {
  const bool neg = a.coeff < 0;
  const Rational c = rat_abs(a.coeff);
  switch (a.kind) {
    case AtomKind::RationalConst:
      out.push_back({neg, latex_rational(c)});
      return;
    case AtomKind::SurdAtom:
      out.push_back({neg, latex_surd(c, a.p1)});
      return;
    case AtomKind::LogRational:
      out.push_back({neg, latex_coeff_prefix(c) + "\\log(" + to_string(a.p1) + ")"});
      return;
    case AtomKind::LogOnly:
      out.push_back({neg, latex_coeff_prefix(c) + "\\log\\bigl(" +
                              latex_inner_log_arg(a.p2, a.p1 + a.p2 * a.p2) + "\\bigr)"});
      return;
    case AtomKind::LogPair:
      out.push_back({neg, latex_coeff_prefix(c) + "\\log\\bigl(" +
                              latex_inner_log_arg(a.p2, a.p1 + a.p2 * a.p2) + "\\bigr)"});
      out.push_back({!neg, latex_coeff_prefix(c) + "\\log" + latex_surd(Rational(1), a.p1)});
      return;
    case AtomKind::ArctanAtom: {
      const Rational sum = a.p1 + a.p2 * a.p2 + a.p3 * a.p3;
      std::string front = latex_surd(c / (2 * a.p1), a.p1);
      std::string arg = latex_surd(a.p2 * a.p3 / (a.p1 * sum), a.p1 * sum);
      out.push_back({neg, (front == "1" ? "" : front + "\\,") + "\\arctan\\bigl(" + arg + "\\bigr)"});
      return;
    }
    case AtomKind::PiSurd: {
      Surd s = surd_simplify({c, a.p1});
      std::string body = s.radicand == 1 ? latex_coeff_prefix(s.coeff) + "\\pi"
                                         : latex_surd(s.coeff, s.radicand) + "\\,\\pi";
      out.push_back({neg, body});
      return;
    }
    case AtomKind::GenLog: {
      std::string root = latex_surd(a.p2, a.p3);
      std::string arg = a.p1 == 0 ? root : latex_rational(a.p1) + "+" + root;
      out.push_back({neg, latex_coeff_prefix(c) + "\\log\\bigl(" + arg + "\\bigr)"});
      return;
    }
    case AtomKind::GenArctan: {
      std::string root = latex_surd(a.p1, a.p2);
      out.push_back({neg, latex_coeff_prefix(c) + "\\arctan\\bigl(" + root + "\\bigr)"});
      return;
    }
  }
}

// sigma-term body without coefficient, e.g. "exp(-4*sigma^2)*Erf(sigma)^2/sigma".
std::string sigma_term_text(const SigmaTerm& t) {
  std::vector<std::string> parts;
  if (t.gauss_rate != 0) {
    std::string rate;
    if (t.gauss_rate == 1)
      rate = "sigma^2";
    else if (denominator(t.gauss_rate) == 1)
      rate = to_string(t.gauss_rate) + "*sigma^2";
    else
      rate = "(" + to_string(t.gauss_rate) + ")*sigma^2";
    parts.push_back("exp(-" + rate + ")");
  }
  for (std::size_t i = 0; i < t.erf_args.size();) {
    std::size_t j = i;
    while (j < t.erf_args.size() && t.erf_args[j] == t.erf_args[i]) ++j;
    const Rational& d = t.erf_args[i];
    std::string arg = d == 1 ? "sigma"
                             : (denominator(d) == 1 ? to_string(d) + "*sigma"
                                                    : "(" + to_string(d) + ")*sigma");
    std::string piece = "Erf(" + arg + ")";
    if (j - i > 1) piece += "^" + std::to_string(j - i);
    parts.push_back(piece);
    i = j;
  }
  std::string body;
  for (std::size_t i = 0; i < parts.size(); ++i) body += (i ? "*" : "") + parts[i];
  if (t.mu > 0) {
    if (body.empty()) body = "1";
    body += "/sigma";
    if (t.mu > 1) body += "^" + std::to_string(t.mu);
  }
  return body;
}

std::string sigma_term_latex(const SigmaTerm& t) {
  std::string body;
  if (t.mu > 0) body += t.mu == 1 ? "\\sigma^{-1}" : "\\sigma^{-" + std::to_string(t.mu) + "}";
  if (t.gauss_rate != 0) {
    body += "e^{-";
    if (t.gauss_rate != 1) body += latex_rational(t.gauss_rate);
    body += "\\sigma^2}";
  }
  for (std::size_t i = 0; i < t.erf_args.size();) {
    std::size_t j = i;
    while (j < t.erf_args.size() && t.erf_args[j] == t.erf_args[i]) ++j;
    const Rational& d = t.erf_args[i];
    body += "\\operatorname{Erf}(";
    if (d != 1) body += latex_rational(d);
    body += "\\sigma)";
    if (j - i > 1) body += "^{" + std::to_string(j - i) + "}";
    i = j;
  }
  if (body.empty()) body = "1";
  return body;
}

std::string format_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", std::clamp(digits, 1, 17), v);
  return buf;
}

nlohmann::json rational_json(const Rational& q) { return to_string(q); }

nlohmann::json term_json(const SigmaTerm& t) {
  nlohmann::json j;
  j["mu"] = t.mu;
  j["gauss_rate"] = rational_json(t.gauss_rate);
  nlohmann::json args = nlohmann::json::array();
  for (const auto& d : t.erf_args) args.push_back(rational_json(d));
  j["erf_args"] = args;
  return j;
}

const char* atom_kind_name(AtomKind k) {
  switch (k) {
    case AtomKind::RationalConst: return "rational";
    case AtomKind::SurdAtom: return "surd";
    case AtomKind::LogRational: return "log_rational";
    case AtomKind::LogOnly: return "log";
    case AtomKind::LogPair: return "log_pair";
    case AtomKind::ArctanAtom: return "arctan";
    case AtomKind::PiSurd: return "pi";
    case AtomKind::GenLog: return "gen_log";
    case AtomKind::GenArctan: return "gen_arctan";
  }
  return "?";
}

nlohmann::json atom_json(const ClosedAtom& a) {
  nlohmann::json j;
  j["kind"] = atom_kind_name(a.kind);
  j["coeff"] = rational_json(a.coeff);
  nlohmann::json params = nlohmann::json::object();
  switch (a.kind) {
    case AtomKind::RationalConst:
      break;
    case AtomKind::SurdAtom:
    case AtomKind::PiSurd:
      params["radicand"] = rational_json(a.p1);
      break;
    case AtomKind::LogRational:
      params["argument"] = rational_json(a.p1);
      break;
    case AtomKind::LogOnly:
    case AtomKind::LogPair:
      params["G"] = rational_json(a.p1);
      params["delta"] = rational_json(a.p2);
      break;
    case AtomKind::ArctanAtom:
      params["G"] = rational_json(a.p1);
      params["delta2"] = rational_json(a.p2);
      params["delta3"] = rational_json(a.p3);
      break;
    case AtomKind::GenLog:
      params["u"] = rational_json(a.p1);
      params["v"] = rational_json(a.p2);
      params["radicand"] = rational_json(a.p3);
      break;
    case AtomKind::GenArctan:
      params["v"] = rational_json(a.p1);
      params["radicand"] = rational_json(a.p2);
      break;
  }
  j["params"] = params;
  return j;
}

}  // namespace

std::string emit(const ClosedExpr& e, EmitFormat format, int digits) {
  if (format == EmitFormat::Text || format == EmitFormat::Latex) {
    std::vector<Piece> pieces;
    for (const auto& a : e.atoms) {
      if (format == EmitFormat::Text)
        atom_pieces_text(a, pieces);
      else
        atom_pieces_latex(a, pieces);
    }
    for (const auto& r : e.residuals) {
      const bool neg = r.coeff < 0;
      const Rational c = rat_abs(r.coeff);
      if (format == EmitFormat::Text) {
        pieces.push_back({neg, coeff_prefix(c) + "I[" + sigma_term_text(r.term) + "]"});
      } else {
        pieces.push_back({neg, latex_coeff_prefix(c) +
                                   "\\frac{2}{\\sqrt{\\pi}}\\int_0^\\infty " +
                                   sigma_term_latex(r.term) + "\\,d\\sigma"});
      }
    }
    return join_pieces(pieces);
  }

  nlohmann::json doc;
  doc["problem"] = nullptr;
  doc["status"] = status_name(e.status);
  nlohmann::json atoms = nlohmann::json::array();
  for (const auto& a : e.atoms) atoms.push_back(atom_json(a));
  doc["closed_form"] = atoms;
  nlohmann::json residuals = nlohmann::json::array();
  double residual_value = 0, residual_error = 0;
  for (const auto& r : e.residuals) {
    nlohmann::json rj;
    rj["term"] = term_json(r.term);
    rj["term"]["coeff"] = rational_json(r.coeff);
    QuadratureResult q = price_residual(r);
    rj["value"] = q.value;
    rj["error"] = q.error_estimate;
    residual_value += q.value;
    residual_error += q.error_estimate;
    residuals.push_back(rj);
  }
  doc["residuals"] = residuals;
  if (e.status == ResultStatus::Divergent || e.ledger != 0) {
    doc["value"] = nullptr;
  } else {
    double total = residual_value;
    for (const auto& a : e.atoms) total += a.value();
    doc["value"] = {{"decimal", format_double(total, digits)}, {"digits", digits}};
  }
  return doc.dump(2);
}

std::string sigma_to_string(const SigmaExpr& e) {
  std::vector<Piece> pieces;
  for (const auto& [t, c] : e.terms()) {
    const bool neg = c < 0;
    const Rational a = rat_abs(c);
    std::string body = sigma_term_text(t);
    if (body.empty() || body == "1") {
      pieces.push_back({neg, to_string(a)});
    } else if (body.rfind("1/", 0) == 0) {  // pure "1/sigma^k" power
      std::string num = denominator(a) == 1 ? to_string(a) : "(" + to_string(a) + ")";
      pieces.push_back({neg, num + body.substr(1)});
    } else {
      pieces.push_back({neg, coeff_prefix(a) + body});
    }
  }
  return join_pieces(pieces);
}

std::string sigma_to_latex(const SigmaExpr& e) {
  std::vector<Piece> pieces;
  for (const auto& [t, c] : e.terms()) {
    const bool neg = c < 0;
    const Rational a = rat_abs(c);
    pieces.push_back({neg, latex_coeff_prefix(a) + sigma_term_latex(t)});
  }
  return join_pieces(pieces);
}

}  // namespace newtpot
