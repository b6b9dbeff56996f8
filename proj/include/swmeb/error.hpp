#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace swmeb {

// Bad arguments: dimension mismatch, parameter out of range, empty input.
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent algorithm configuration (e.g. partition size not dividing the window).
class InvalidConfig : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what + " (residual " + std::to_string(residual) + ")"),
        residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

class UnsupportedDimension : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Gaussian kernel width would be zero (every sampled point identical).
class DegenerateKernel : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A zero-radius window makes the relative error undefined.
class DegenerateWindow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Query issued before a sliding-window structure holds any live index.
class WarmUpError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace swmeb
