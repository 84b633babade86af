#pragma once

#include <stdexcept>
#include <string>

namespace chebz {

enum class ErrorKind {
  InvalidInput,   // precondition violated by the caller
  NotApplicable,  // hypothesis of a check does not hold
  Diagnostic,     // a post-verification failed (usually: input system is not Chebyshev)
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void invalid_input(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}
[[noreturn]] inline void diagnostic(const std::string& what) {
  throw Error(ErrorKind::Diagnostic, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) invalid_input(what);
}

}  // namespace chebz
