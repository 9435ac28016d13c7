#pragma once

#include <stdexcept>
#include <string>

namespace ssrom {

// Base for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad shapes, non-finite data, violated preconditions, malformed files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Configuration files and command-line values.
class ConfigError : public InputError {
 public:
  using InputError::InputError;
};

// Singular systems, missing spectral gaps, degenerate samples.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// pi_k is undefined: sigma_k - sigma_{k+1} is not above the gap tolerance.
class IllDefinedSubspace : public NumericalError {
 public:
  IllDefinedSubspace(double gap, int k)
      : NumericalError("principal subspace ill-defined: singular value gap at k=" +
                       std::to_string(k) + " is " + std::to_string(gap)),
        gap_(gap) {}
  double gap() const noexcept { return gap_; }

 private:
  double gap_;
};

// A bootstrap resample whose resampled matrix has rank below k.
class DegenerateResample : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace ssrom
