#pragma once

#include <stdexcept>
#include <string>

namespace schutz {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A documented precondition of an operation was not met.
class InputError : public Error {
 public:
  using Error::Error;
};

// Malformed literal or document.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A finite-model document parsed but violates O1/O3 or references unknown
// events.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A construction that must succeed on a model satisfying the axioms did not.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

// Membership or a quantifier cannot be decided from the available data.
class UndecidableError : public Error {
 public:
  using Error::Error;
};

}  // namespace schutz
