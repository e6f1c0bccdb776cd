#pragma once

#include <stdexcept>
#include <string>

namespace c2f {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or truncated input bytes (image files, store files).
class DecodeError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameter or mismatched configuration between stores.
class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace c2f
