#ifndef MOMENTBC_ERROR_HPP
#define MOMENTBC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace momentbc {

// Machine-readable error codes. The CLI maps these to exit status and to the
// "error" field of its JSON output; library callers can switch on them.
enum class ErrorCode {
  insufficient_moments,
  insufficient_response_entries,
  not_positive_definite,
  no_convergence,
  singular_matrix,
  singular_hankel,
  degenerate_data,
  parse_error,
  invalid_argument,
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::insufficient_moments: return "insufficient-moments";
    case ErrorCode::insufficient_response_entries: return "insufficient-response-entries";
    case ErrorCode::not_positive_definite: return "not-positive-definite";
    case ErrorCode::no_convergence: return "no-convergence";
    case ErrorCode::singular_matrix: return "singular-matrix";
    case ErrorCode::singular_hankel: return "singular-hankel";
    case ErrorCode::degenerate_data: return "degenerate-data";
    case ErrorCode::parse_error: return "parse-error";
    case ErrorCode::invalid_argument: return "invalid-argument";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace momentbc

#endif  // MOMENTBC_ERROR_HPP
