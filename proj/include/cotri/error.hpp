#pragma once

#include <stdexcept>
#include <string>

namespace cotri {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two operands carry different field characteristics or live over different algebras.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// A checker was invoked on input that does not satisfy its stated precondition.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive search would exceed its configured budget.
class BudgetError : public Error {
 public:
  using Error::Error;
};

/// A module could not be expressed in the additive closure of a catalog.
class DecompositionError : public Error {
 public:
  using Error::Error;
};

}  // namespace cotri
