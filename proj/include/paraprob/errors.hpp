#pragma once

#include <stdexcept>
#include <string>

namespace paraprob {

// Failure categories surfaced by validation and rule evaluation. Inputs that
// violate a contract by more than the stated slack are rejected with one of
// these; nothing is silently clamped into range.
enum class ErrorCode {
  OutOfRange,
  ZeroEvidence,
  Incoherent,
  NotNormalized,
  InvalidFrame,
  InvalidTable,
  DegenerateFrame,
  DegenerateModel,
  InvalidMass,
  FrameConflict,
  MassMismatch,
  BadDimension,
  DimensionMismatch,
  NotHermitian,
  NotSic,
  BadIndex,
  NotFound,
  DepthExceeded,
  ParseError,
  InvalidConfig,
  InternalCheck,
  InvalidInput,
};

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::ZeroEvidence: return "ZeroEvidence";
    case ErrorCode::Incoherent: return "Incoherent";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::InvalidFrame: return "InvalidFrame";
    case ErrorCode::InvalidTable: return "InvalidTable";
    case ErrorCode::DegenerateFrame: return "DegenerateFrame";
    case ErrorCode::DegenerateModel: return "DegenerateModel";
    case ErrorCode::InvalidMass: return "InvalidMass";
    case ErrorCode::FrameConflict: return "FrameConflict";
    case ErrorCode::MassMismatch: return "MassMismatch";
    case ErrorCode::BadDimension: return "BadDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NotSic: return "NotSic";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::DepthExceeded: return "DepthExceeded";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InternalCheck: return "InternalCheck";
    case ErrorCode::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) throw Error(code, what);
}

}  // namespace paraprob
