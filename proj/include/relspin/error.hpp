#pragma once

#include <stdexcept>
#include <string>

namespace relspin {

// Base class for every error this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Boost speed outside [0, 1).
struct SpeedOutOfRange : Error {
  using Error::Error;
};

// Particle energy factor below 1.
struct EnergyOutOfRange : Error {
  using Error::Error;
};

// An observable failed its adjoint check.
struct NonHermitianObservable : Error {
  using Error::Error;
};

// The boost-composition residual is not a rotation about the expected axis;
// signals a setup bug in the Lorentz-matrix path, not bad user input.
struct DecompositionFailure : Error {
  using Error::Error;
};

// A direction vector with zero length cannot be normalized.
struct ZeroDirection : Error {
  using Error::Error;
};

// A quantity that is real or bounded by construction came out otherwise.
struct InternalConsistencyError : Error {
  using Error::Error;
};

// Invalid scan/CLI configuration. CLI exit code 2.
struct ConfigError : Error {
  using Error::Error;
};

// Failed to write an output file. CLI exit code 3.
struct IoError : Error {
  using Error::Error;
};

}  // namespace relspin
