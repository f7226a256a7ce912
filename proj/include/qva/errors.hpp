#pragma once

#include <stdexcept>
#include <string>

namespace qva {

// Machine-readable failure categories. Every engine error carries one of
// these plus a human-readable message; the C API maps them onto integer
// codes and the CLI onto exit statuses.
enum class ErrorCode {
  InvalidInput,      // malformed JSON, bad mode lists, bad parameters
  InvalidConfig,     // run configuration violates an invariant
  SymmetryViolated,  // g(z) g(1/z) != 1
  IrrationalRoots,   // numerator part has roots outside Q
  ZeroLeadingTerm,   // series inversion of an identically-zero input
  TruncationExceeded,// coefficient access beyond the retained truncation
  NegativeIndex,     // phi_i with i < 0
  ZeroAlpha,         // A[alpha] with alpha = 0
  NotAnalytic,       // component table needs g(0) finite and nonzero (l = 0)
  FactorizationMismatch,  // eps*q(x)/q(-x) failed to reproduce h (engine bug)
  Inconsistent,      // input module contradicts the untruncated relations
  CheckFailed,       // a verification suite found a counterexample
  Internal,          // invariant breach inside the engine
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

inline const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::InvalidInput: return "invalid_input";
    case ErrorCode::InvalidConfig: return "invalid_config";
    case ErrorCode::SymmetryViolated: return "symmetry_violated";
    case ErrorCode::IrrationalRoots: return "irrational_roots";
    case ErrorCode::ZeroLeadingTerm: return "zero_leading_term";
    case ErrorCode::TruncationExceeded: return "truncation_exceeded";
    case ErrorCode::NegativeIndex: return "negative_index";
    case ErrorCode::ZeroAlpha: return "zero_alpha";
    case ErrorCode::NotAnalytic: return "not_analytic";
    case ErrorCode::FactorizationMismatch: return "factorization_mismatch";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::CheckFailed: return "check_failed";
    case ErrorCode::Internal: return "internal";
  }
  return "unknown";
}

}  // namespace qva
