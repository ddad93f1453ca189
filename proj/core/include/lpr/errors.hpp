#pragma once

#include <stdexcept>
#include <string>

namespace lpr {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: duplicate abscissae, non-finite values, bad parameters.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// The local moment system is rank deficient (too few supported points or a
/// vanishing pivot).
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// The kernel has more sign changes than a degree p-1 local fit can produce.
class NotRepresentable : public Error {
 public:
  using Error::Error;
};

/// The kernel does not satisfy the moment conditions of the requested type.
class NotTypeQP : public Error {
 public:
  using Error::Error;
};

/// No choice of overall sign makes the recovered weights non-negative.
class InconsistentSigns : public Error {
 public:
  using Error::Error;
};

}  // namespace lpr
