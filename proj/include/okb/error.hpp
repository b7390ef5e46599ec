#pragma once

#include <stdexcept>
#include <string>

namespace okb {

enum class ErrorCode {
  parse,               // malformed input text or JSON schema violation
  dimension_mismatch,  // operands live in different ambient spaces
  invalid_argument,    // well-formed input outside an operation's domain
  unbounded,           // half-space system does not define a bounded region
  empty_body,          // operation needs a nonempty polytope
  inside_base_locus,   // subvariety lies in the restricted base locus
  model_inconsistent,  // surface model data contradicts a theorem
  not_pseudoeffective,
  invalid_fan,
};

inline const char* to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::dimension_mismatch: return "dimension-mismatch";
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::unbounded: return "unbounded";
    case ErrorCode::empty_body: return "empty-body";
    case ErrorCode::inside_base_locus: return "inside-restricted-base-locus";
    case ErrorCode::model_inconsistent: return "model-inconsistent";
    case ErrorCode::not_pseudoeffective: return "not-pseudoeffective";
    case ErrorCode::invalid_fan: return "invalid-fan";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  /// Errors caused by the shape of the input rather than its mathematics.
  bool is_input_error() const noexcept {
    return code_ == ErrorCode::parse || code_ == ErrorCode::dimension_mismatch;
  }

 private:
  ErrorCode code_;
};

}  // namespace okb
