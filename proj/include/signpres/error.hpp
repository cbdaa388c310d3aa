#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace signpres {

enum class ErrorKind {
  InvalidInput,
  OutOfRange,
  DegenerateInput,
  NumericalGuard,
  SingularSystem,
  NoConvergence,
  PositivityFailure,
  BracketFailure,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return "InvalidInput";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NumericalGuard: return "NumericalGuard";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::PositivityFailure: return "PositivityFailure";
    case ErrorKind::BracketFailure: return "BracketFailure";
  }
  return "Unknown";
}

/// True for failures of a numerical procedure, as opposed to bad input.
constexpr bool is_numerical(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput:
    case ErrorKind::OutOfRange:
    case ErrorKind::DegenerateInput:
      return false;
    default:
      return true;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) throw Error(kind, what);
}

}  // namespace signpres
