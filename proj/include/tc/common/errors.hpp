#pragma once

#include <stdexcept>
#include <string>

namespace tc {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid experiment configuration or parameter combination.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A configured memory or work budget would be exceeded.
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A multiplicative-function description is incomplete.
class SpecificationError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace tc
