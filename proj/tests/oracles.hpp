// Independent reference implementations used to cross-check the library.
// These deliberately share no code with the solver paths they verify.
#ifndef DYNNET_TEST_ORACLES_HPP
#define DYNNET_TEST_ORACLES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <random>

namespace oracles {

// Cyclic coordinate descent on
//   1/2 b'Sb - b'v + sum_i lambda_i |b_i|
// run to stagnation. Slow but simple.
inline Eigen::VectorXd coordinate_descent(const Eigen::MatrixXd& S,
                                          const Eigen::VectorXd& v,
                                          const Eigen::VectorXd& lambda,
                                          int sweeps = 100000,
                                          double stall = 1e-14) {
  const int p = static_cast<int>(v.size());
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    double max_change = 0.0;
    for (int i = 0; i < p; ++i) {
      if (std::isinf(lambda[i])) continue;
      double r = v[i];
      for (int j = 0; j < p; ++j)
        if (j != i) r -= S(i, j) * beta[j];
      const double mag = std::abs(r) - lambda[i];
      const double updated = mag > 0.0 ? (r > 0 ? mag : -mag) / S(i, i) : 0.0;
      max_change = std::max(max_change, std::abs(updated - beta[i]));
      beta[i] = updated;
    }
    if (max_change < stall) break;
  }
  return beta;
}

// Column-wise ordinary least squares via the normal equations, regressing
// each column of the future block on the past block.
inline Eigen::MatrixXd columnwise_ols(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows()) - 1;
  const Eigen::MatrixXd past = X.topRows(n);
  const Eigen::MatrixXd future = X.bottomRows(n);
  const Eigen::MatrixXd G = past.transpose() * past;
  const int p = static_cast<int>(X.cols());
  Eigen::MatrixXd A(p, p);
  for (int k = 0; k < p; ++k)
    A.col(k) = G.fullPivLu().solve(past.transpose() * future.col(k));
  return A;
}

// Random PSD matrix S = X'X / n with n >= rank controls.
inline Eigen::MatrixXd random_psd(int p, int n, std::mt19937& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::MatrixXd X(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) X(i, j) = nd(rng);
  return X.transpose() * X / static_cast<double>(n);
}

inline Eigen::VectorXd random_vector(int p, std::mt19937& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  Eigen::VectorXd v(p);
  for (int j = 0; j < p; ++j) v[j] = nd(rng);
  return v;
}

}  // namespace oracles

#endif
