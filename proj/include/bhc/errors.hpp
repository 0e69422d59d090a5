#pragma once

#include <stdexcept>
#include <string>

namespace bhc {

// Base for every error raised by the library. The CLI maps InvalidArgument to
// exit code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last_iterate)
      : Error(what), last_iterate_(last_iterate) {}
  const char* kind() const noexcept override { return "convergence"; }
  double last_iterate() const noexcept { return last_iterate_; }

 private:
  double last_iterate_;
};

class BracketError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "bracket"; }
};

// Complex eigenvalues of kappa*H2 (dynamically unstable quadratic form).
class InstabilityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "instability"; }
};

class DomainError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "domain"; }
};

class CollinearityError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "collinearity"; }
};

}  // namespace bhc
