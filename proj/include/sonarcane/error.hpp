#pragma once

#include <stdexcept>
#include <string>

namespace sonarcane {

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Ray that cannot be cast (origin under the ground, direction past the horizon).
class InvalidRay : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Scene, sensor or simulation configuration that breaks its invariants.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Least-squares fit with no spread in the abscissa.
class DegenerateFit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Scenario or calibration text that does not parse. `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

}  // namespace sonarcane
