#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace halfplane {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr cplx kI{0.0, 1.0};

// Pointwise agreement of maps and functions.
inline constexpr double kEvalTol = 1e-10;
// Determinant threshold, relative to the largest coefficient magnitude squared.
inline constexpr double kDetTol = 1e-12;
// Distance at which a point is considered to sit on a recorded pole.
inline constexpr double kPoleTol = 1e-9;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateMap : public Error {
 public:
  using Error::Error;
};

/// A sample taken on an extraction circle was NaN or infinite.
class NonFiniteSample : public Error {
 public:
  using Error::Error;
};

class PoleHit : public Error {
 public:
  using Error::Error;
};

class NotSelfMap : public Error {
 public:
  using Error::Error;
};

class BasepointOutsideRegion : public Error {
 public:
  using Error::Error;
};

class NotInSpace : public Error {
 public:
  using Error::Error;
};

class InconclusiveMembership : public Error {
 public:
  using Error::Error;
};

/// Malformed JSON spec or invalid argument combination.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace halfplane
