#include "newtpot/bipoly.hpp"

#include <cmath>
#include <sstream>

namespace newtpot {

void BiPoly::add_term(int i, int j, const Rational& c) {
  if (c == 0) return;
  auto key = std::make_pair(i, j);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

int BiPoly::degree() const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, k.first + k.second);
  return d;
}

BiPoly BiPoly::operator-() const {
  BiPoly out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, -c);
  return out;
}

BiPoly& BiPoly::operator+=(const BiPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& rhs) {
  for (const auto& [k, c] : rhs.terms_) add_term(k.first, k.second, -c);
  return *this;
}

BiPoly operator*(const BiPoly& lhs, const BiPoly& rhs) {
  BiPoly out;
  for (const auto& [ka, ca] : lhs.terms_)
    for (const auto& [kb, cb] : rhs.terms_)
      out.add_term(ka.first + kb.first, ka.second + kb.second, ca * cb);
  return out;
}

BiPoly operator*(const Rational& c, const BiPoly& p) {
  BiPoly out;
  if (c == 0) return out;
  for (const auto& [k, pc] : p.terms_) out.terms_.emplace(k, c * pc);
  return out;
}

Rational BiPoly::eval(const Rational& x, const Rational& y) const {
  Rational out = 0;
  for (const auto& [k, c] : terms_) out += c * rat_pow(x, k.first) * rat_pow(y, k.second);
  return out;
}

double BiPoly::eval(double x, double y) const {
  double out = 0;
  for (const auto& [k, c] : terms_)
    out += to_double(c) * std::pow(x, k.first) * std::pow(y, k.second);
  return out;
}

BiPoly BiPoly::swap_vars() const {
  BiPoly out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(std::make_pair(k.second, k.first), c);
  return out;
}

std::map<int, BiPoly> BiPoly::collect_y() const {
  std::map<int, BiPoly> out;
  for (const auto& [k, c] : terms_) out[k.second].add_term(k.first, 0, c);
  return out;
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    first = false;
    Rational a = rat_abs(c);
    bool unit = (a == 1) && (k.first != 0 || k.second != 0);
    if (!unit) os << to_string(a);
    if (k.first != 0) os << (unit ? "" : "*") << "x" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
    if (k.second != 0) {
      if (k.first != 0 || !unit) os << "*";
      os << "y" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
  }
  return os.str();
}

}  // namespace newtpot
