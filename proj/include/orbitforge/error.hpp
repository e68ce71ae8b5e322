#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace orbitforge {

enum class Errc {
  // exact core
  ZeroInput,
  NotMonic,
  NotSquare,
  Singular,
  Inconsistent,
  NonIntegral,
  FactorizationTimeout,
  DimensionMismatch,
  InvalidArgument,
  // etale algebra
  ZeroDivisor,
  NonUnit,
  NotOddPolynomial,
  // quadratic forms
  Degenerate,
  ZeroArgument,
  NotIsotropic,
  WrongDimension,
  NonSquareComplement,
  IsotropicSearchFailed,
  // orbits
  NonSeparable,
  WrongDegree,
  NormNotSquare,
  NotTauFixed,
  NoCyclicVector,
  ZeroDiscriminant,
  // descent
  NotOnCurve,
  WeierstrassPoint,
  NotGenusOne,
  // census
  EvenQ,
  NonSeparableModP,
  BudgetExceeded,
  EvenPrime,
  BadPrime,
  MaximalRankHypothesisFails,
  // integral lattices
  RingMismatch,
  NotAnIdeal,
  NotPrimitive,
  NullVector,
  NotNegativeDiscriminant,
  NotPositiveDefinite,
  InvalidDiscriminant,
  // cli
  ParseError,
  Internal,
};

constexpr std::string_view errc_name(Errc e) noexcept {
  switch (e) {
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::NotMonic: return "NotMonic";
    case Errc::NotSquare: return "NotSquare";
    case Errc::Singular: return "Singular";
    case Errc::Inconsistent: return "Inconsistent";
    case Errc::NonIntegral: return "NonIntegral";
    case Errc::FactorizationTimeout: return "FactorizationTimeout";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::ZeroDivisor: return "ZeroDivisor";
    case Errc::NonUnit: return "NonUnit";
    case Errc::NotOddPolynomial: return "NotOddPolynomial";
    case Errc::Degenerate: return "Degenerate";
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::NotIsotropic: return "NotIsotropic";
    case Errc::WrongDimension: return "WrongDimension";
    case Errc::NonSquareComplement: return "NonSquareComplement";
    case Errc::IsotropicSearchFailed: return "IsotropicSearchFailed";
    case Errc::NonSeparable: return "NonSeparable";
    case Errc::WrongDegree: return "WrongDegree";
    case Errc::NormNotSquare: return "NormNotSquare";
    case Errc::NotTauFixed: return "NotTauFixed";
    case Errc::NoCyclicVector: return "NoCyclicVector";
    case Errc::ZeroDiscriminant: return "ZeroDiscriminant";
    case Errc::NotOnCurve: return "NotOnCurve";
    case Errc::WeierstrassPoint: return "WeierstrassPoint";
    case Errc::NotGenusOne: return "NotGenusOne";
    case Errc::EvenQ: return "EvenQ";
    case Errc::NonSeparableModP: return "NonSeparableModP";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EvenPrime: return "EvenPrime";
    case Errc::BadPrime: return "BadPrime";
    case Errc::MaximalRankHypothesisFails: return "MaximalRankHypothesisFails";
    case Errc::RingMismatch: return "RingMismatch";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::NullVector: return "NullVector";
    case Errc::NotNegativeDiscriminant: return "NotNegativeDiscriminant";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::InvalidDiscriminant: return "InvalidDiscriminant";
    case Errc::ParseError: return "ParseError";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

/// Every library failure is reported as an Error carrying a machine-readable
/// code; the message is for humans only.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// A ParseError that remembers the offending character offset.
class ParseFailure : public Error {
 public:
  ParseFailure(std::size_t position, const std::string& what)
      : Error(Errc::ParseError, "at position " + std::to_string(position) + ": " + what), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, Errc code, const std::string& what) {
  if (!cond) raise(code, what);
}

}  // namespace orbitforge
