#pragma once

#include <stdexcept>
#include <string>

namespace pb {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A domain type invariant was violated at construction.
struct InvariantViolation : Error {
  using Error::Error;
};

/// Spherical-chart evaluation requested at (or too close to) a chart pole.
struct PoleSingularity : Error {
  using Error::Error;
};

/// Two fiber vectors with different base points were combined.
struct BaseMismatch : Error {
  using Error::Error;
};

/// A quadrature mesh failed its accuracy checks (e.g. the 4*pi weight sum).
struct MeshTooCoarse : Error {
  using Error::Error;
};

/// A point was passed to a hemisphere evaluator for the other hemisphere.
struct WrongHemisphere : Error {
  using Error::Error;
};

/// Argument outside the defined parameter interval.
struct DomainError : Error {
  using Error::Error;
};

/// Boost velocity at or above the speed of light.
struct SuperluminalBoost : Error {
  using Error::Error;
};

/// The 4x4 matrix does not preserve time orientation.
struct NonOrthochronous : Error {
  using Error::Error;
};

/// A lattice plaquette accumulated a phase of magnitude >= pi; the mesh must
/// be refined before the winding sum is trustworthy.
struct PlaquetteOverflow : Error {
  using Error::Error;
};

/// A section was asked for more derivative levels than it supports.
struct NonDifferentiableSection : Error {
  using Error::Error;
};

/// Bad CLI configuration (unknown subcommand, malformed flag value, ...).
struct ConfigError : Error {
  using Error::Error;
};

/// Filesystem failure while reading or writing a report.
struct IoError : Error {
  using Error::Error;
};

}  // namespace pb
