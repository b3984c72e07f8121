#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace faddeev {

enum class ErrorKind {
  InvalidArgument,
  InvalidConfig,
  NonFinite,
  ChartExit,
  AmplitudeTooLarge,
  PrincipalDegenerate,
  SupportViolation,
  WrapAround,
  EmptyWindow,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above so
/// callers (the integrator, the CLI) can map it to a status or exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace faddeev
