#pragma once

#include <functional>
#include <vector>

#include "gabdual/gabor.hpp"
#include "gabdual/linalg.hpp"
#include "gabdual/types.hpp"

namespace gabdual {

/// Admissible support: a closed interval of signed indices.
struct SupportSpec {
  IndexInterval interval;

  /// Centered interval of the given length, {-floor(n/2), ..., ceil(n/2)-1}.
  static SupportSpec centered(long length);
  /// The whole index range of length L.
  static SupportSpec full(long L);

  [[nodiscard]] long length() const { return interval.size(); }
  /// Throws InvalidArgument unless the interval is nonempty and lies inside centered_range(L).
  void validate(long L) const;
  /// Circular positions (0..L-1) covered by the interval, in index order.
  [[nodiscard]] std::vector<long> positions(long L) const;
};

using Projection = std::function<RealVector(const RealVector&)>;

/// Zeroes every entry outside the interval.
RealVector project_support(const RealVector& y, const SupportSpec& s);

/// Relative feasibility tolerance: a projection whose output misses the
/// right-hand side by more than this times ||rhs|| counts as empty.
inline constexpr double kFeasibilityTolerance = 1e-8;

/// Orthogonal projection onto {x : G x = rhs}:  x = y - G^+ (G y - rhs).
/// Throws InfeasibleConstraint if the result misses the affine set.
RealVector project_dual(const RealVector& y, const WRSystem& wr);

/// Exact projection onto the duals supported on a given interval.
///
/// The WR columns outside the support are deleted once at construction and
/// the reduced matrix is pseudo-inverted with the cutoff of the full system.
/// Construction throws InfeasibleConstraint when the reduced system is
/// inconsistent, i.e. no dual with that support exists.
class DualSupportedProjector {
 public:
  DualSupportedProjector(const WRSystem& wr, const SupportSpec& s);

  [[nodiscard]] RealVector operator()(const RealVector& y) const;

  /// Least-norm dual with the support (the projection of 0).
  [[nodiscard]] RealVector least_norm() const;

  [[nodiscard]] const SupportSpec& support() const { return support_; }
  [[nodiscard]] long length() const { return L_; }
  [[nodiscard]] const PseudoInverse& pinv() const { return pinv_; }
  /// ||G_s x_ls - rhs|| / ||rhs|| for the least-squares solution x_ls.
  [[nodiscard]] double consistency() const { return consistency_; }

 private:
  SupportSpec support_;
  long L_;
  std::vector<long> positions_;
  RealMatrix reduced_;
  RealVector rhs_;
  PseudoInverse pinv_;
  double consistency_ = 0.0;
};

RealVector project_dual_supported(const RealVector& y, const WRSystem& wr, const SupportSpec& s);

/// S_{y,a,M}^{-1/2} y: the canonical tight window of y, which is the nearest
/// Parseval window. Throws FrameError when y generates no frame.
RealVector project_parseval(const RealVector& y, const GaborParams& p);

/// Orthogonal projection onto the line spanned by v.
RealVector project_span(const RealVector& y, const RealVector& v);

}  // namespace gabdual
