#pragma once

#include <stdexcept>
#include <string>

namespace cone {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument failed basic validation (non-finite value, dimension
/// mismatch, malformed range, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Tried to place an atom at a position that already carries one.
class PositionOccupied : public Error {
 public:
  using Error::Error;
};

/// Looked up or removed an atom at a position that carries none.
class NoAtomAt : public Error {
 public:
  using Error::Error;
};

/// Atom weights must be strictly positive and finite.
class NonpositiveWeight : public Error {
 public:
  using Error::Error;
};

/// A configuration on the marked space assigns two different weights to
/// one position, so it does not describe a discrete measure.
class NotPinpointing : public Error {
 public:
  using Error::Error;
};

/// Tried to add a point that is already part of the configuration.
class DuplicatePoint : public Error {
 public:
  using Error::Error;
};

/// subtract() was called with an argument that is not a submeasure.
class NotSubmeasure : public Error {
 public:
  using Error::Error;
};

/// Two measures were required to have disjoint supports but do not.
class OverlappingSupports : public Error {
 public:
  using Error::Error;
};

/// A combinatorial enumeration would exceed the configured atom cap.
class TooManyAtoms : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature could not reach the requested tolerance within
/// its subdivision budget.
class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

/// A certified growth or support bound was violated at some input.
class BoundViolated : public Error {
 public:
  using Error::Error;
};

/// A series could not be truncated at the requested tolerance within
/// the term budget.
class SeriesNotTruncated : public Error {
 public:
  using Error::Error;
};

/// A run configuration file is malformed or inconsistent. The message
/// names the offending field.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// File or stream I/O failed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cone
