#pragma once

#include <stdexcept>
#include <string>

namespace eiscong {

// Precondition violations and operational failures.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computed result contradicts a proven statement it is checked against.
// The CLI maps this to exit code 2.
class DiscrepancyError : public Error {
 public:
  using Error::Error;
};

}  // namespace eiscong
