#pragma once

#include <stdexcept>
#include <string>

namespace torusmirror {

enum class ErrorKind {
  kInvalidArgument,
  kIndeterminatePhase,
  kNotSymplecticType,
  kNotComplexType,
  kMirrorUndefined,
  kNotHolomorphic,
  kNotLagrangian,
  kConfig,
};

const char* to_string(ErrorKind kind);

// Every failure raised by the library carries a kind so callers (the CLI in
// particular) can turn it into a skipped check or an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace torusmirror
