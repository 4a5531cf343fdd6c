#pragma once

#include <stdexcept>
#include <string>

namespace cedfv {

//! Material tensors fail positive-definiteness or sign requirements.
class InvalidMaterialError : public std::runtime_error {
 public:
  explicit InvalidMaterialError(const std::string& what) : std::runtime_error(what) {}
};

//! Numerical eigendecomposition did not produce a usable eigensystem.
class EigensystemError : public std::runtime_error {
 public:
  explicit EigensystemError(const std::string& what) : std::runtime_error(what) {}
};

//! Riemann fan with coincident extremal speeds.
class DegenerateFanError : public std::runtime_error {
 public:
  explicit DegenerateFanError(const std::string& what) : std::runtime_error(what) {}
};

//! Operation requires diagonal material tensors.
class UnsupportedMaterialError : public std::runtime_error {
 public:
  explicit UnsupportedMaterialError(const std::string& what) : std::runtime_error(what) {}
};

//! Source operator evaluated on a matrix with negative spectrum.
class InvalidSourceError : public std::runtime_error {
 public:
  explicit InvalidSourceError(const std::string& what) : std::runtime_error(what) {}
};

//! Non-finite field data detected during a mesh update.
class NumericalFailureError : public std::runtime_error {
 public:
  explicit NumericalFailureError(const std::string& what) : std::runtime_error(what) {}
};

//! Malformed or inconsistent run configuration.  Carries a line number
//! (0 when the error is not tied to a specific line).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace cedfv
