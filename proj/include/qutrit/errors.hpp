#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qutrit {

enum class ErrorCode {
  kNotSymmetric,
  kComplexResidue,
  kNonPositiveTemperature,
  kZeroRepulsion,
  kBilinearTermPresent,
  kClosedFormUnavailable,
  kFormulaMismatch,
  kNotNormalized,
  kNoEntanglementAtZeroField,
  kNoEntangledPhase,
  kBracketNotFound,
  kInvalidSweep,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotSymmetric: return "NotSymmetric";
    case ErrorCode::kComplexResidue: return "ComplexResidue";
    case ErrorCode::kNonPositiveTemperature: return "NonPositiveTemperature";
    case ErrorCode::kZeroRepulsion: return "ZeroRepulsion";
    case ErrorCode::kBilinearTermPresent: return "BilinearTermPresent";
    case ErrorCode::kClosedFormUnavailable: return "ClosedFormUnavailable";
    case ErrorCode::kFormulaMismatch: return "FormulaMismatch";
    case ErrorCode::kNotNormalized: return "NotNormalized";
    case ErrorCode::kNoEntanglementAtZeroField: return "NoEntanglementAtZeroField";
    case ErrorCode::kNoEntangledPhase: return "NoEntangledPhase";
    case ErrorCode::kBracketNotFound: return "BracketNotFound";
    case ErrorCode::kInvalidSweep: return "InvalidSweep";
  }
  return "Unknown";
}

/// Domain error raised by every operation in the library. The code is the
/// machine-readable case; what() carries the code name plus context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace qutrit
