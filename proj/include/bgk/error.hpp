#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace bgk {

/// Base of every error the solver raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid grid, run configuration, or config-file text.
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error(what) {}
  ConfigError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

/// Two fields (or a field and a coefficient set) live on different grids.
class GridMismatch : public Error {
 public:
  using Error::Error;
};

/// A numerical state the scheme cannot continue from. Carries the spatial
/// cell (1-based) and, once the stepper has seen it, the step index.
class NumericalError : public Error {
 public:
  NumericalError(std::string kind, std::size_t cell, std::string detail)
      : Error(kind), kind_(std::move(kind)), cell_(cell), detail_(std::move(detail)) {
    rebuild();
  }

  const std::string& kind() const { return kind_; }
  std::size_t cell() const { return cell_; }
  std::optional<std::size_t> step() const { return step_; }

  void set_step(std::size_t step) {
    step_ = step;
    rebuild();
  }

  const char* what() const noexcept override { return message_.c_str(); }

 private:
  void rebuild() {
    message_ = kind_ + " at cell " + std::to_string(cell_);
    if (step_) message_ += ", step " + std::to_string(*step_);
    if (!detail_.empty()) message_ += " (" + detail_ + ")";
  }

  std::string kind_;
  std::size_t cell_;
  std::string detail_;
  std::optional<std::size_t> step_;
  std::string message_;
};

class NonPositiveDensity : public NumericalError {
 public:
  NonPositiveDensity(std::size_t cell, std::string detail)
      : NumericalError("NonPositiveDensity", cell, std::move(detail)) {}
};

class NonPositiveTemperature : public NumericalError {
 public:
  NonPositiveTemperature(std::size_t cell, std::string detail)
      : NumericalError("NonPositiveTemperature", cell, std::move(detail)) {}
};

class SingularCorrection : public NumericalError {
 public:
  SingularCorrection(std::size_t cell, std::string detail)
      : NumericalError("SingularCorrection", cell, std::move(detail)) {}
};

}  // namespace bgk
