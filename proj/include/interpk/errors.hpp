#ifndef INTERPK_ERRORS_HPP_
#define INTERPK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace interpk {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A vector is not contained in the index window of a norm or couple.
class WindowError : public Error {
 public:
  using Error::Error;
};

// A structural invariant of an input is violated (nonpositive weight,
// increasing sequence, ...).
class InvariantError : public Error {
 public:
  using Error::Error;
};

// A scalar argument lies outside the domain of the operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Problem size exceeds a cost guard.
class SizeError : public Error {
 public:
  using Error::Error;
};

// Interpolation parameter rejected (e.g. a K-trivial lattice).
class ParamError : public Error {
 public:
  using Error::Error;
};

class UnsupportedError : public Error {
 public:
  using Error::Error;
};

// A constructive witness failed its own certificate.
class ConstructionError : public Error {
 public:
  using Error::Error;
};

// No sample produced a usable ratio.
class EmptyReport : public Error {
 public:
  using Error::Error;
};

// Malformed configuration or serialized input.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace interpk

#endif  // INTERPK_ERRORS_HPP_
