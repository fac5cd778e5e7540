#ifndef CARNOT_ERRORS_HPP
#define CARNOT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace carnot {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraMismatch : Error {
  AlgebraMismatch() : Error("operands belong to different algebras") {}
};

struct ResourceLimitError : Error {
  ResourceLimitError(size_t dim, size_t cap)
      : Error("algebra dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(cap)) {}
};

/// Structure-constant validation failure; indices are 1-based and name
/// the offending basis triple (or pair, with k = 0).
struct ValidationError : Error {
  enum class Kind { Antisymmetry, Grading, Jacobi, NotStratified };

  ValidationError(Kind kind, int i, int j, int k, const std::string& msg)
      : Error(msg), kind(kind), i(i), j(j), k(k) {}

  Kind kind;
  int i, j, k;

  static const char* name(Kind k) {
    switch (k) {
      case Kind::Antisymmetry: return "AntisymmetryViolation";
      case Kind::Grading: return "GradingViolation";
      case Kind::Jacobi: return "JacobiViolation";
      case Kind::NotStratified: return "NotStratified";
    }
    return "ValidationError";
  }
};

struct DerivationExtensionError : Error {
  using Error::Error;
};

struct ZeroCovectorError : Error {
  ZeroCovectorError() : Error("covector must be nonzero") {}
};

struct NotHomomorphismError : Error {
  using Error::Error;
};

struct OddRankError : Error {
  OddRankError() : Error("strata are defined only for even rank") {}
};

struct SampleNotInYError : Error {
  SampleNotInYError() : Error("sample point is not in stratum Y") {}
};

struct NotAbnormalError : Error {
  NotAbnormalError() : Error("point is not abnormal") {}
};

struct DegreeTooHighError : Error {
  DegreeTooHighError() : Error("wedge power degree exceeds the rank") {}
};

struct ZeroMatrixError : Error {
  ZeroMatrixError() : Error("skew matrix is identically zero; kernel is everything") {}
};

struct EmptyTrajectoryError : Error {
  EmptyTrajectoryError() : Error("trajectory is empty") {}
};

struct NonNilpotentProlongationError : Error {
  NonNilpotentProlongationError()
      : Error("adjoint action is not a finite series for the supplied element") {}
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace carnot

#endif
