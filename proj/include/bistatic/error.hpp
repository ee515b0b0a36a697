#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bistatic {

enum class ErrorKind {
  Domain,
  NoTarget,
  SplitRegimeUnsupported,
  NumericalFailure,
  UnboundedCell,
  NoCrossing,
  DegenerateOptimum,
  Config,
  Io,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NoTarget: return "NoTarget";
    case ErrorKind::SplitRegimeUnsupported: return "SplitRegimeUnsupported";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::UnboundedCell: return "UnboundedCell";
    case ErrorKind::NoCrossing: return "NoCrossing";
    case ErrorKind::DegenerateOptimum: return "DegenerateOptimum";
    case ErrorKind::Config: return "ConfigError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

}  // namespace bistatic
