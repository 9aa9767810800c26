#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace conecalc {

enum class Errc {
  SyntaxError,
  MixedDegree,
  WrongArity,
  ArityMismatch,
  DimensionMismatch,
  DegreeMismatch,
  DimensionTooSmall,
  TermBudgetExceeded,
  BadLevel,
  NotUnitVector,
  ZeroProjection,
  NotNormalized,
  DegenerateMax,
  ZeroIntegral,
  BadDegrees,
  BadEpsilon,
  InvalidArgument,
};

constexpr std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::MixedDegree: return "MixedDegree";
    case Errc::WrongArity: return "WrongArity";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DimensionTooSmall: return "DimensionTooSmall";
    case Errc::TermBudgetExceeded: return "TermBudgetExceeded";
    case Errc::BadLevel: return "BadLevel";
    case Errc::NotUnitVector: return "NotUnitVector";
    case Errc::ZeroProjection: return "ZeroProjection";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::DegenerateMax: return "DegenerateMax";
    case Errc::ZeroIntegral: return "ZeroIntegral";
    case Errc::BadDegrees: return "BadDegrees";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the Errc codes so
/// callers (and the CLI) can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace conecalc
