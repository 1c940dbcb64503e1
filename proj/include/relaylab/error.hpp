/**
 * @file error.hpp
 * @brief Exception types raised by relaylab.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace relaylab {

/// A parameter is outside its documented domain.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Matrix or vector dimensions do not agree.
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that must be positive semi-definite has a significantly negative
/// eigenvalue.
class NotPsdError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The configuration makes a closed form undefined (e.g. all traces zero).
class DegenerateConfig : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An analog beamformer lacks the rank needed to carry K streams.
class SingularBeamformer : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A channel-estimate Gram matrix is too ill-conditioned to invert.
class IllConditionedEstimate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace relaylab
