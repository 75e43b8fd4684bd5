#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nij {

enum class ErrorKind {
  backend_mismatch,
  dimension_mismatch,
  singular_matrix,
  degenerate_metric,
  not_a_lie_algebra,
  frame_mismatch,
  quaternionic_violation,
  compatibility_violation,
  signature_violation,
  zero_lambda,
  generator_failure,
  theorem_inconsistency,
  g1_predicate_disagreement,
  precondition_violation,
  parse_error,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::backend_mismatch: return "backend-mismatch";
    case ErrorKind::dimension_mismatch: return "dimension-mismatch";
    case ErrorKind::singular_matrix: return "singular-matrix";
    case ErrorKind::degenerate_metric: return "degenerate-metric";
    case ErrorKind::not_a_lie_algebra: return "not-a-lie-algebra";
    case ErrorKind::frame_mismatch: return "frame-mismatch";
    case ErrorKind::quaternionic_violation: return "quaternionic-violation";
    case ErrorKind::compatibility_violation: return "compatibility-violation";
    case ErrorKind::signature_violation: return "signature-violation";
    case ErrorKind::zero_lambda: return "zero-lambda";
    case ErrorKind::generator_failure: return "generator-failure";
    case ErrorKind::theorem_inconsistency: return "theorem-inconsistency";
    case ErrorKind::g1_predicate_disagreement: return "g1-predicate-disagreement";
    case ErrorKind::precondition_violation: return "precondition-violation";
    case ErrorKind::parse_error: return "parse-error";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace nij
