#pragma once

#include <stdexcept>
#include <string>

namespace gitkit {

/// Raised for invalid input to a core operation (rank mismatch, out-of-range
/// sizes, malformed data). The CLI maps these to exit code 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string code, const std::string& message, std::string context = {})
      : std::runtime_error(message), code_(std::move(code)), context_(std::move(context)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& context() const noexcept { return context_; }

 private:
  std::string code_;
  std::string context_;
};

/// Raised when an internal consistency check fails (non-exact Weyl division,
/// negative multiplicity, eigen-solver non-convergence). Never silently rounded.
class InvariantError : public DomainError {
 public:
  InvariantError(const std::string& message, std::string context = {})
      : DomainError("invariant_breach", message, std::move(context)) {}
};

}  // namespace gitkit
