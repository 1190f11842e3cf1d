#pragma once

#include <functional>
#include <stdexcept>
#include <string>

namespace srmdp {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Malformed instance file: bad JSON, missing field, wrong type, unknown
// identifier. what() includes a JSON path like /transition/s1/a1.
class ParseError : public Error {
public:
  ParseError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

private:
  std::string path_;
};

// Structurally sound instance that violates a numeric invariant
// (row sums, negative probabilities, empty action sets), or invalid
// solver/setting configuration.
class ValidationError : public Error {
public:
  using Error::Error;
};

// An iteration or enumeration budget ran out before convergence.
class BudgetError : public Error {
public:
  using Error::Error;
};

// A linear system came back rank-deficient or a residual check failed.
class NumericalError : public Error {
public:
  using Error::Error;
};

// Non-fatal diagnostics (e.g. a policy inducing a reducible chain) go
// through here; default handler writes to stderr.
using WarnHandler = std::function<void(const std::string&)>;
void set_warn_handler(WarnHandler handler);  // pass nullptr to restore default
void warn(const std::string& message);

}  // namespace srmdp
