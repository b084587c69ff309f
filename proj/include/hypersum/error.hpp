#pragma once

#include <stdexcept>
#include <string>

namespace hypersum {

/// Base of every error the library raises. `kind()` is a stable name used in
/// reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HYPERSUM_ERROR(Name)                                               \
  class Name : public Error {                                              \
   public:                                                                 \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  }

// A denominator Pochhammer factor vanishes inside the summation range.
HYPERSUM_ERROR(PoleError);
HYPERSUM_ERROR(NotTerminatingError);
HYPERSUM_ERROR(ConvergenceDomainError);
HYPERSUM_ERROR(BudgetExceededError);
HYPERSUM_ERROR(DomainError);
HYPERSUM_ERROR(SingularParameterError);
HYPERSUM_ERROR(UnknownIdentityError);
HYPERSUM_ERROR(ParseError);

#undef HYPERSUM_ERROR

/// Raised by the registry when a parameter binding violates an identity's
/// domain. `cause()` names the underlying error kind (PoleError, ...).
class ParamDomainError : public Error {
 public:
  ParamDomainError(std::string cause, const std::string& what)
      : Error("ParamDomainError", what), cause_(std::move(cause)) {}
  const std::string& cause() const noexcept { return cause_; }

 private:
  std::string cause_;
};

}  // namespace hypersum
