#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmrff {

// Vector/matrix shape does not match the kernel or model dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A part-density that is identically zero cannot be normalized or sampled.
class DegenerateMeasureError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The rejection sampler's constant c does not bound f/g in practice.
class EnvelopeFailureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SpectralOverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

class UnsupportedDimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline void require_dim(std::ptrdiff_t got, std::ptrdiff_t want, const char* what) {
  if (got != want) {
    throw DimensionError(std::string(what) + ": expected dimension " + std::to_string(want) +
                         ", got " + std::to_string(got));
  }
}

}  // namespace cmrff
