#pragma once

#include <stdexcept>
#include <string>

namespace brinkstab {

/// Invalid physical input (wrong sign, out of admissible interval, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& msg) : std::domain_error(msg) {}
};

/// Structurally invalid call: empty list, unknown enum string, N too small.
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& msg) : std::invalid_argument(msg) {}
};

/// A numerical routine failed (factorization, eigensolver, root bracketing).
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A solve finished but produced nothing usable; carries context for triage.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Time integration detected a blow-up consistent with a too-large step.
class IntegratorError : public std::runtime_error {
 public:
  explicit IntegratorError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace brinkstab
