#include "gabdual/constraint.hpp"

#include <string>

namespace gabdual {

SupportSpec SupportSpec::centered(long length) {
  if (length <= 0) throw InvalidArgument("SupportSpec: length must be positive");
  return {centered_range(length)};
}

SupportSpec SupportSpec::full(long L) { return centered(L); }

void SupportSpec::validate(long L) const {
  if (interval.empty()) throw InvalidArgument("SupportSpec: empty interval");
  const IndexInterval range = centered_range(L);
  if (interval.first < range.first || interval.last > range.last) {
    throw InvalidArgument("SupportSpec: interval [" + std::to_string(interval.first) + ", " +
                          std::to_string(interval.last) + "] exceeds the index range of length " + std::to_string(L));
  }
}

std::vector<long> SupportSpec::positions(long L) const {
  validate(L);
  std::vector<long> pos;
  pos.reserve(static_cast<std::size_t>(interval.size()));
  for (long l = interval.first; l <= interval.last; ++l) pos.push_back(wrap_index(l, L));
  return pos;
}

RealVector project_support(const RealVector& y, const SupportSpec& s) {
  const long L = y.size();
  RealVector out = RealVector::Zero(L);
  for (long p : s.positions(L)) out[p] = y[p];
  return out;
}

RealVector project_dual(const RealVector& y, const WRSystem& wr) {
  const RealMatrix& G = wr.matrix();
  if (y.size() != G.cols()) throw InvalidArgument("project_dual: length mismatch");
  const RealVector& b = wr.rhs();
  RealVector x = y - wr.pinv().apply(G * y - b);
  if ((G * x - b).norm() > kFeasibilityTolerance * b.norm()) {
    throw InfeasibleConstraint("project_dual: the WR system is inconsistent (window generates no frame?)");
  }
  return x;
}

DualSupportedProjector::DualSupportedProjector(const WRSystem& wr, const SupportSpec& s)
    : support_(s), L_(wr.params().L()), positions_(s.positions(wr.params().L())), rhs_(wr.rhs()) {
  const RealMatrix& G = wr.matrix();
  reduced_.resize(G.rows(), static_cast<long>(positions_.size()));
  for (std::size_t j = 0; j < positions_.size(); ++j) reduced_.col(static_cast<long>(j)) = G.col(positions_[j]);
  pinv_ = PseudoInverse(reduced_, wr.pinv().cutoff());

  const RealVector ls = pinv_.apply(rhs_);
  consistency_ = (reduced_ * ls - rhs_).norm() / rhs_.norm();
  if (!(consistency_ <= kFeasibilityTolerance)) {
    throw InfeasibleConstraint("no dual window is supported on [" + std::to_string(s.interval.first) + ", " +
                               std::to_string(s.interval.last) + "] (relative WR residual " +
                               std::to_string(consistency_) + ")");
  }
}

RealVector DualSupportedProjector::operator()(const RealVector& y) const {
  if (y.size() != L_) throw InvalidArgument("DualSupportedProjector: length mismatch");
  RealVector ys(static_cast<long>(positions_.size()));
  for (std::size_t j = 0; j < positions_.size(); ++j) ys[static_cast<long>(j)] = y[positions_[j]];
  ys -= pinv_.apply(reduced_ * ys - rhs_);
  RealVector out = RealVector::Zero(L_);
  for (std::size_t j = 0; j < positions_.size(); ++j) out[positions_[j]] = ys[static_cast<long>(j)];
  return out;
}

RealVector DualSupportedProjector::least_norm() const { return (*this)(RealVector::Zero(L_)); }

RealVector project_dual_supported(const RealVector& y, const WRSystem& wr, const SupportSpec& s) {
  return DualSupportedProjector(wr, s)(y);
}

RealVector project_parseval(const RealVector& y, const GaborParams& p) {
  return FrameOperator(y, p).inverse_sqrt(y);
}

RealVector project_span(const RealVector& y, const RealVector& v) {
  if (y.size() != v.size()) throw InvalidArgument("project_span: length mismatch");
  const double vv = v.squaredNorm();
  if (vv == 0.0) throw InvalidArgument("project_span: zero spanning vector");
  return (v.dot(y) / vv) * v;
}

}  // namespace gabdual
