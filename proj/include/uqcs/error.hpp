#pragma once

#include <stdexcept>
#include <string>

namespace uqcs {

// Base for every error the library raises. `kind()` is the stable,
// machine-readable tag the CLI emits in its error JSON.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "invalid_argument"; }
};

class DimensionError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension_mismatch"; }
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "convergence_failure"; }
};

class OverflowError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "overflow"; }
};

class InfeasibleGrid : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "infeasible_grid"; }
};

// Raised when an identity-spectrum peak is too weak to divide by.
class DarkStateError : public Error {
 public:
  DarkStateError(const std::string& what, double energy, double amplitude)
      : Error(what), energy_(energy), amplitude_(amplitude) {}
  const char* kind() const noexcept override { return "dark_state"; }
  double energy() const noexcept { return energy_; }
  double amplitude() const noexcept { return amplitude_; }

 private:
  double energy_;
  double amplitude_;
};

class TrackingError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "subspace_tracking"; }
};

class SchemaError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema"; }
};

}  // namespace uqcs
