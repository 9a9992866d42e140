#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace gabdual {

using Complex = std::complex<double>;

/// Real length-L sequence, indices taken modulo L (position 0 holds index 0).
using RealVector = Eigen::VectorXd;
/// Complex length-L sequence, indices taken modulo L.
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using ComplexMatrix = Eigen::MatrixXcd;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Violated precondition (bad length, divisibility, unknown kind, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A constraint set is (numerically) empty.
class InfeasibleConstraint : public Error {
 public:
  using Error::Error;
};

/// The window does not generate a frame (frame operator singular).
class FrameError : public Error {
 public:
  using Error::Error;
};

/// Iteration produced NaN or infinite values.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// Closed integer interval [first, last].
struct IndexInterval {
  long first = 0;
  long last = -1;

  [[nodiscard]] long size() const { return last >= first ? last - first + 1 : 0; }
  [[nodiscard]] bool empty() const { return size() == 0; }
  [[nodiscard]] bool contains(long l) const { return l >= first && l <= last; }
  bool operator==(const IndexInterval&) const = default;
};

/// Index range {-floor(n/2), ..., ceil(n/2)-1} used for windows and periodic signals.
inline IndexInterval centered_range(long n) {
  return {-(n / 2), n - n / 2 - 1};
}

/// Maps an integer index onto {0, ..., L-1}.
inline long wrap_index(long l, long L) {
  long r = l % L;
  return r < 0 ? r + L : r;
}

/// Signed index in {-floor(L/2), ..., ceil(L/2)-1} of circular position p.
inline long signed_index(long p, long L) {
  return p < L - L / 2 ? p : p - L;
}

}  // namespace gabdual
