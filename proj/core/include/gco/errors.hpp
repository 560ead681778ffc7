#pragma once

#include <stdexcept>
#include <string>

namespace gco {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Factorization hit a nonpositive pivot. `pivot` is 1-based.
struct NotPositiveDefinite : Error {
  int pivot;
  explicit NotPositiveDefinite(int p)
      : Error("matrix not positive definite at pivot " + std::to_string(p)), pivot(p) {}
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotInterior : Error {
  NotInterior() : Error("point is not in the cone interior") {}
  using Error::Error;
};

struct SingularHessian : Error {
  SingularHessian() : Error("dual Hessian factorization failed") {}
};

struct SingularProjection : Error {
  SingularProjection() : Error("constraint projection is rank deficient") {}
};

struct ParseError : Error {
  int line;
  ParseError(int ln, const std::string& reason)
      : Error("parse error at line " + std::to_string(ln) + ": " + reason), line(ln) {}
};

struct ValidationError : Error {
  using Error::Error;
};

}  // namespace gco
