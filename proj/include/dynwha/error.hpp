#pragma once

#include <stdexcept>
#include <string>

namespace dynwha {

enum class Err {
  EvenOrSmallEll,
  DivisionByZero,
  ZeroQFactorial,
  NonGenericLambda,
  NonInvertibleForm,
  BadSublattice,
  SingularTorusTensor,
  EllNotCoprime,
  DimensionTooLarge,
  TwistInvalid,
  BadGauge,
  NotAGroupoid,
  CoprimalityViolation,
  UnsupportedType,
  NotUnitriangular,
  SingularZ,
  NotInnerProductPreserving,
  RankDeficient,
  Internal,
};

const char* err_name(Err e);

/// Library-wide exception carrying a stable error code plus a witness string.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(err_name(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& what) { throw Error(code, what); }

}  // namespace dynwha
