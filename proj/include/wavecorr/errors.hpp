#pragma once

#include <stdexcept>
#include <string>

namespace wavecorr {

/// Base class for all library errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed sizes, unknown names, out-of-range flags.
struct InvalidInputError : Error {
  using Error::Error;
};

/// Zero-variance input, zero contrast denominator, |r| = 1 where a
/// Fisher transform is required.
struct DegenerateError : Error {
  using Error::Error;
};

/// Tied values where a no-ties rank statistic was requested.
struct TiesError : Error {
  using Error::Error;
};

/// An intermediate correlation of magnitude 1 in a partial-correlation
/// recursion.
struct CollinearityError : Error {
  using Error::Error;
};

/// Sample too small for the requested interval.
struct InsufficientSampleError : Error {
  using Error::Error;
};

/// A formula produced a value outside its admissible range (e.g. a
/// negative variance).
struct NumericError : Error {
  using Error::Error;
};

}  // namespace wavecorr
