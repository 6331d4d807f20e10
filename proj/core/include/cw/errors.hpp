#pragma once

#include <stdexcept>
#include <string>

namespace cw {

enum class Err {
  NotIrreducible,
  AxiomViolation,
  CapExceeded,
  NotAUnit,
  NotBilinear,
  Singular,
  MNotTauClosed,
  PsiNotInjective,
  NoSuchJ,
  ClosureCapExceeded,
  BraceNotInPhi,
  LambdaEscapesM,
  SingularMatrix,
  NotInvertible,
  NoPolynomialNumerator,
  NonIntegerCoefficient,
  PhiNotInPhi,
  NotCompatible,
  SizeExceeded,
  ConditionViolated,
  KernelMismatch,
  OrderMismatch,
  NotProjective,
  UnknownPreset,
  ArithmeticOverflow,
  BadSpec,
};

const char* err_name(Err e);

/// Carries a machine-readable code alongside the human message so the CLI
/// can surface failures without string matching.
class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

} // namespace cw
