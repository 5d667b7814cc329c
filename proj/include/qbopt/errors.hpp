#pragma once

#include <stdexcept>
#include <string>

namespace qbopt {

/// Bad run setup: unsupported qubit count, malformed model, bad sweep range.
class ConfigError : public std::invalid_argument {
public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// Out-of-range index, size mismatch, or otherwise unusable call argument.
class ArgumentError : public std::invalid_argument {
public:
  explicit ArgumentError(const std::string& what) : std::invalid_argument(what) {}
};

/// Parameter combination that contradicts a named model preset.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Numerical breakdown: eigensolver failure, non-finite cost or gradient.
class NumericalError : public std::runtime_error {
public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Failure to write or remove an output file.
class IoError : public std::runtime_error {
public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qbopt
