#pragma once

#include <stdexcept>
#include <string>

namespace polyrecon {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated a documented precondition (bad size, bad dimension, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// The halfspace system does not describe a bounded simple polytope.
class GeometryError : public Error {
 public:
  using Error::Error;
};

// A direction makes some vertex coefficient blow up (orthogonal edge) or
// produces coincident projections. Callers resample the direction.
class DegenerateDirection : public Error {
 public:
  using Error::Error;
};

// Projection recovery could not produce a trustworthy answer.
class RecoveryError : public Error {
 public:
  using Error::Error;
};

// End-to-end reconstruction gave up after exhausting its retry budget.
class ReconstructionError : public Error {
 public:
  using Error::Error;
};

}  // namespace polyrecon
