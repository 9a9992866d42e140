#include "gabdual/linalg.hpp"

#include <algorithm>
#include <limits>

#include <Eigen/SVD>

namespace gabdual {

PseudoInverse::PseudoInverse(const RealMatrix& A) : PseudoInverse(A, -1.0) {}

PseudoInverse::PseudoInverse(const RealMatrix& A, double cutoff) : rows_(A.rows()), cols_(A.cols()) {
  if (A.size() == 0) return;
  RealMatrix U;
  RealMatrix V;
  RealVector s;
  {
    Eigen::BDCSVD<RealMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    U = svd.matrixU();
    V = svd.matrixV();
    s = svd.singularValues();
  }
  // Divide-and-conquer SVD can return non-finite vectors for clusters of
  // equal singular values; one-sided Jacobi is slower but robust there.
  if (!U.allFinite() || !V.allFinite() || !s.allFinite()) {
    Eigen::JacobiSVD<RealMatrix> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    U = svd.matrixU();
    V = svd.matrixV();
    s = svd.singularValues();
  }
  sigma_max_ = s.size() > 0 ? s[0] : 0.0;
  cutoff_ = cutoff >= 0.0
                ? cutoff
                : static_cast<double>(std::max(rows_, cols_)) * std::numeric_limits<double>::epsilon() * sigma_max_;
  while (rank_ < s.size() && s[rank_] > cutoff_) ++rank_;
  u_ = U.leftCols(rank_);
  v_ = V.leftCols(rank_);
  sinv_ = s.head(rank_).cwiseInverse();
}

RealVector PseudoInverse::apply(const RealVector& b) const {
  if (b.size() != rows_) throw InvalidArgument("PseudoInverse::apply: dimension mismatch");
  if (rank_ == 0) return RealVector::Zero(cols_);
  RealVector coeff = u_.transpose() * b;
  coeff.array() *= sinv_.array();
  return v_ * coeff;
}

}  // namespace gabdual
