#ifndef NETSDP_ERRORS_HPP
#define NETSDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace netsdp {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class NotChordalError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

class BadCliqueError : public Error {
 public:
  using Error::Error;
};

class NotDecomposableError : public Error {
 public:
  using Error::Error;
};

class PatternMismatchError : public Error {
 public:
  using Error::Error;
};

class NonzeroDError : public Error {
 public:
  using Error::Error;
};

class UnstableError : public Error {
 public:
  using Error::Error;
};

// Linear-algebra breakdown (e.g. a singular affine-step factorization).
class NumericalError : public Error {
 public:
  using Error::Error;
};

// An iterative eigensolver failed to converge.
class ConvergenceFailureError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class BracketFailureError : public Error {
 public:
  using Error::Error;
};

// Dense oracles are guarded against sizes they were not meant for.
class SizeLimitError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace netsdp

#endif  // NETSDP_ERRORS_HPP
