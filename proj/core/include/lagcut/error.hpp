#pragma once

#include <stdexcept>
#include <string>

namespace lagcut {

/// Base class for errors raised on contract violations (bad dimensions,
/// malformed data, preconditions that the caller must satisfy).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace lagcut
