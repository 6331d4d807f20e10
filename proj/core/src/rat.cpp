#include "cw/rat.hpp"

namespace cw {

Rat parse_rat(const std::string& s) {
  size_t slash = s.find('/');
  if (slash == std::string::npos) return Rat(std::stoll(s));
  return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

const char* err_name(Err e) {
  switch (e) {
    case Err::NotIrreducible: return "NotIrreducible";
    case Err::AxiomViolation: return "AxiomViolation";
    case Err::CapExceeded: return "CapExceeded";
    case Err::NotAUnit: return "NotAUnit";
    case Err::NotBilinear: return "NotBilinear";
    case Err::Singular: return "Singular";
    case Err::MNotTauClosed: return "MNotTauClosed";
    case Err::PsiNotInjective: return "PsiNotInjective";
    case Err::NoSuchJ: return "NoSuchJ";
    case Err::ClosureCapExceeded: return "ClosureCapExceeded";
    case Err::BraceNotInPhi: return "BraceNotInPhi";
    case Err::LambdaEscapesM: return "LambdaEscapesM";
    case Err::SingularMatrix: return "SingularMatrix";
    case Err::NotInvertible: return "NotInvertible";
    case Err::NoPolynomialNumerator: return "NoPolynomialNumerator";
    case Err::NonIntegerCoefficient: return "NonIntegerCoefficient";
    case Err::PhiNotInPhi: return "PhiNotInPhi";
    case Err::NotCompatible: return "NotCompatible";
    case Err::SizeExceeded: return "SizeExceeded";
    case Err::ConditionViolated: return "ConditionViolated";
    case Err::KernelMismatch: return "KernelMismatch";
    case Err::OrderMismatch: return "OrderMismatch";
    case Err::NotProjective: return "NotProjective";
    case Err::UnknownPreset: return "UnknownPreset";
    case Err::ArithmeticOverflow: return "ArithmeticOverflow";
    case Err::BadSpec: return "BadSpec";
  }
  return "Unknown";
}

} // namespace cw
