#pragma once

#include "gabdual/types.hpp"

namespace gabdual {

/// Moore-Penrose pseudoinverse of a real matrix from its thin SVD.
///
/// Singular values below tau = max(rows, cols) * eps * sigma_max are treated
/// as zero, so linearly dependent rows do not blow up the solve.
class PseudoInverse {
 public:
  PseudoInverse() = default;
  explicit PseudoInverse(const RealMatrix& A);
  /// Same with an explicit absolute singular-value cutoff.
  PseudoInverse(const RealMatrix& A, double cutoff);

  /// A^+ b
  [[nodiscard]] RealVector apply(const RealVector& b) const;

  [[nodiscard]] long rank() const { return rank_; }
  [[nodiscard]] double cutoff() const { return cutoff_; }
  [[nodiscard]] double sigma_max() const { return sigma_max_; }
  [[nodiscard]] long rows() const { return rows_; }
  [[nodiscard]] long cols() const { return cols_; }

 private:
  RealMatrix u_;      // rows x rank
  RealVector sinv_;   // rank
  RealMatrix v_;      // cols x rank
  long rank_ = 0;
  long rows_ = 0;
  long cols_ = 0;
  double cutoff_ = 0.0;
  double sigma_max_ = 0.0;
};

}  // namespace gabdual
