#pragma once

// coeff * sqrt(radicand) values, e.g. the sqrt(2)/336 pieces of results.

#include "newtpot/rational.hpp"

namespace newtpot {

struct Surd {
  Rational coeff{0};
  Rational radicand{1};

  friend bool operator==(const Surd&, const Surd&) = default;
};

// Canonical form: radicand is a nonnegative integer, squarefree up to the
// trial-division bound (perfect-square leftovers are still extracted);
// sqrt(p/q) is normalized to sqrt(pq)/q; value 0 is {0, 1}.
Surd surd_simplify(const Surd& s);

double surd_value(const Surd& s);

std::string surd_to_string(const Surd& s);

}  // namespace newtpot
