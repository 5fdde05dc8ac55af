#pragma once

#include <stdexcept>
#include <string>

namespace stunted {

/// Root of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the domain of an operation (x outside [0,1], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A piece, orbit or partition budget ran out before the answer was exact.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Invalid family parameters; the message names the violated inequality.
class ConstraintViolation : public Error {
 public:
  using Error::Error;
};

class PreconditionError : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

/// Input does not have the combinatorial structure an operation needs.
class StructureError : public Error {
 public:
  using Error::Error;
};

}  // namespace stunted
