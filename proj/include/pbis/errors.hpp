#pragma once

#include <stdexcept>
#include <string>

namespace pbis {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters or violated preconditions.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// An exhaustive search or truncation would exceed its fixed budget.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// A numerical tolerance could not be reached within the truncation budget.
class ToleranceNotMet : public Error {
 public:
  using Error::Error;
};

}  // namespace pbis
