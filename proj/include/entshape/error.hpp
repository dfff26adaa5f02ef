#pragma once

#include <stdexcept>
#include <string>

namespace entshape {

// Base for every error the library throws.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of an operation.
class DomainError : public Error {
  public:
    using Error::Error;
};

// A grid, spectrum, or mask was configured with inconsistent parameters.
class ConfigurationError : public Error {
  public:
    using Error::Error;
};

// Operands do not fit together (e.g. two different grids).
class UsageError : public Error {
  public:
    using Error::Error;
};

// A requested time or delay lies outside the sampled window.
class RangeError : public Error {
  public:
    using Error::Error;
};

class InternalError : public Error {
  public:
    using Error::Error;
};

}  // namespace entshape
