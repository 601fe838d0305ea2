#pragma once

#include <stdexcept>
#include <string>

namespace torus {

/// Point outside the region where coordinates or fields are defined.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field magnitude vanishes, so the field-aligned frame is undefined.
class DegenerateField : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Field model carries no electrostatic potential.
class MissingPotential : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TimeGridMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed configuration text; `line()` is 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torus
