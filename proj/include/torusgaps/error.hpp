#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace torusgaps {

enum class Errc {
  InvalidArgument,
  NonPositive,
  NonPositiveDefinite,
  WrongSymmetryClass,
  EmptyBox,
  RejectionOverflow,
  IndexOutOfFundamentalDomain,
  CutoffTooLarge,
  IoError,
  BadMagic,
  VersionMismatch,
  TruncatedFile,
  ChecksumMismatch,
  CutoffExceedsSpectrum,
  BadDelta,
  BudgetExceeded,
  InverseParityViolation,
  Overflow,
  NonDivisible,
  SieveBudgetExceeded,
  QuadratureFailure,
  ConfigInvalid,
};

inline std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::NonPositive: return "NonPositive";
    case Errc::NonPositiveDefinite: return "NonPositiveDefinite";
    case Errc::WrongSymmetryClass: return "WrongSymmetryClass";
    case Errc::EmptyBox: return "EmptyBox";
    case Errc::RejectionOverflow: return "RejectionOverflow";
    case Errc::IndexOutOfFundamentalDomain: return "IndexOutOfFundamentalDomain";
    case Errc::CutoffTooLarge: return "CutoffTooLarge";
    case Errc::IoError: return "IoError";
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::TruncatedFile: return "TruncatedFile";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::CutoffExceedsSpectrum: return "CutoffExceedsSpectrum";
    case Errc::BadDelta: return "BadDelta";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InverseParityViolation: return "InverseParityViolation";
    case Errc::Overflow: return "Overflow";
    case Errc::NonDivisible: return "NonDivisible";
    case Errc::SieveBudgetExceeded: return "SieveBudgetExceeded";
    case Errc::QuadratureFailure: return "QuadratureFailure";
    case Errc::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

/// Single exception type for the library; `code()` identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

  /// True for the failures that mean "the request is too large", which the
  /// CLI maps onto its resource-budget exit code.
  bool is_budget() const noexcept {
    return code_ == Errc::BudgetExceeded || code_ == Errc::CutoffTooLarge ||
           code_ == Errc::SieveBudgetExceeded;
  }

 private:
  Errc code_;
};

}  // namespace torusgaps
