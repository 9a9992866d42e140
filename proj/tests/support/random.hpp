#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace testing_support {

/// Deterministic uniform draws on [-1, 1].
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return dist_(engine_); }

  Eigen::VectorXd vector(long n) {
    Eigen::VectorXd v(n);
    for (long i = 0; i < n; ++i) v[i] = uniform();
    return v;
  }

  Eigen::VectorXcd complex_vector(long n) {
    Eigen::VectorXcd v(n);
    for (long i = 0; i < n; ++i) v[i] = {uniform(), uniform()};
    return v;
  }

  Eigen::MatrixXcd complex_matrix(long r, long c) {
    Eigen::MatrixXcd m(r, c);
    for (long j = 0; j < c; ++j)
      for (long i = 0; i < r; ++i) m(i, j) = {uniform(), uniform()};
    return m;
  }

 private:
  std::mt19937_64 engine_;
  std::uniform_real_distribution<double> dist_{-1.0, 1.0};
};

}  // namespace testing_support
