#pragma once

#include <stdexcept>
#include <string>

namespace hlnls {

enum class ErrorKind {
  InvalidInput,
  Resolution,
  Compatibility,
  InvalidExtension,
  Domain,
  Quadrature,
  NoContraction,
  Lifespan,
  Step,
  Stability,
  Truncation,
  Config,
};

inline const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::Resolution: return "resolution";
    case ErrorKind::Compatibility: return "compatibility";
    case ErrorKind::InvalidExtension: return "invalid-extension";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Quadrature: return "quadrature";
    case ErrorKind::NoContraction: return "no-contraction";
    case ErrorKind::Lifespan: return "lifespan";
    case ErrorKind::Step: return "step";
    case ErrorKind::Stability: return "stability";
    case ErrorKind::Truncation: return "truncation";
    case ErrorKind::Config: return "config";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) {
  throw Error(kind, msg);
}

}  // namespace hlnls
