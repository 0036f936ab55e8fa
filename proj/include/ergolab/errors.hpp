#pragma once

#include <stdexcept>
#include <string>

namespace ergolab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: malformed system, mismatched lengths, schema violations.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A closed form left the range where it can be evaluated exactly.
class RangeError : public Error {
 public:
  using Error::Error;
};

/// A sequence window does not cover the indices an operation reads.
class WindowError : public Error {
 public:
  using Error::Error;
};

/// The number of elementary products exceeds the configured cap.
class BudgetError : public Error {
 public:
  using Error::Error;
};

}  // namespace ergolab
