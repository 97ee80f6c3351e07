#pragma once

#include <stdexcept>
#include <string>

namespace acsel {

// Broad failure classes. The CLI maps invalid_input to exit code 2 and
// numerical_failure to exit code 3.
enum class ErrorKind { invalid_input, numerical_failure };

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

struct TooFewRowsError : Error {
  explicit TooFewRowsError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct ConstantColumnError : Error {
  ConstantColumnError(const std::string& msg, int column)
      : Error(ErrorKind::invalid_input, msg), column(column) {}
  int column;
};

struct NotInHyperplaneError : Error {
  explicit NotInHyperplaneError(const std::string& msg)
      : Error(ErrorKind::numerical_failure, msg) {}
};

struct ZeroResultantError : Error {
  explicit ZeroResultantError(const std::string& msg)
      : Error(ErrorKind::numerical_failure, msg) {}
};

struct DegenerateKappaError : Error {
  explicit DegenerateKappaError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct NoConvergenceError : Error {
  NoConvergenceError(const std::string& msg, double lambda)
      : Error(ErrorKind::numerical_failure, msg), lambda(lambda) {}
  double lambda;
};

struct SingularGramError : Error {
  explicit SingularGramError(const std::string& msg)
      : Error(ErrorKind::numerical_failure, msg) {}
};

struct NotPsdError : Error {
  explicit NotPsdError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct ExternalMatrixMissingError : Error {
  explicit ExternalMatrixMissingError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct SubsampleTooSmallError : Error {
  explicit SubsampleTooSmallError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct ZeroSignalError : Error {
  explicit ZeroSignalError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& msg)
      : Error(ErrorKind::invalid_input, msg) {}
};

}  // namespace acsel
