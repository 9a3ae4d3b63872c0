#pragma once

#include <stdexcept>

namespace lpvident {

/// Base class of every error thrown by this library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sequences that must share a length do not; the message names the fields.
class LengthMismatch : public Error {
 public:
  using Error::Error;
};

/// A sequence or parameter contains NaN or infinity.
class NonFinite : public Error {
 public:
  using Error::Error;
};

/// Fewer samples than the model order allows.
class TooShort : public Error {
 public:
  using Error::Error;
};

/// Characteristic polynomial has a root on or outside the unit circle.
class UnstablePolynomial : public Error {
 public:
  using Error::Error;
};

/// Requested cutoff frequency is not strictly between 0 and Nyquist.
class CutoffOutOfRange : public Error {
 public:
  using Error::Error;
};

/// The regularized kernel system is numerically singular.
class SingularSystem : public Error {
 public:
  using Error::Error;
};

/// Simulated output exceeded the divergence threshold.
class DivergedSimulation : public Error {
 public:
  using Error::Error;
};

/// Reference output is constant, so fit ratios are undefined.
class ZeroVariance : public Error {
 public:
  using Error::Error;
};

/// Every curiosity point diverged during tuning.
class AllDiverged : public Error {
 public:
  using Error::Error;
};

/// File could not be read, written, or parsed; the message carries the path.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace lpvident
