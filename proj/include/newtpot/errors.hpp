#pragma once

#include <stdexcept>
#include <string>

namespace newtpot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZero : Error {
  DivisionByZero() : Error("division by zero") {}
};

struct InvalidRadicand : Error {
  InvalidRadicand() : Error("negative radicand") {}
};

struct InvalidInterval : Error {
  InvalidInterval() : Error("inverted integration bounds") {}
};

struct NotRewritable : Error {
  NotRewritable() : Error("term has no singular power to rewrite") {}
};

struct NotTranslatable : Error {
  NotTranslatable() : Error("term is not of a tabulated integral form") {}
};

struct NotFinite : Error {
  NotFinite() : Error("expression does not have a finite value") {}
};

struct QuadratureFailure : Error {
  explicit QuadratureFailure(const std::string& what) : Error(what) {}
};

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string& what) : Error(what) {}
};

}  // namespace newtpot
