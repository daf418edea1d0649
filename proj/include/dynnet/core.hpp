#ifndef DYNNET_CORE_HPP
#define DYNNET_CORE_HPP

#include <Eigen/Dense>
#include <limits>
#include <string>
#include <vector>

#include "dynnet/errors.hpp"

namespace dynnet {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

// Standardized (n+1) x p observation matrix. Rows are consecutive time
// points, columns are variables; row order is never changed.
struct TimeCourseMatrix {
  Eigen::MatrixXd values;
  std::vector<std::string> names;
  bool standardized = false;

  int time_points() const { return static_cast<int>(values.rows()); }
  int transitions() const { return static_cast<int>(values.rows()) - 1; }
  int vars() const { return static_cast<int>(values.cols()); }
};

// The pair (S, V): S = (1/n) X-' X-  and  V = (1/n) X-' X+, where X- drops
// the last row of X and X+ drops the first.
struct EmpiricalMoments {
  Eigen::MatrixXd S;
  Eigen::MatrixXd V;
  int n = 0;  // transitions
  int p = 0;
};

// One point of an inference path: coefficient estimate with its penalty
// level, degrees of freedom (exact nonzero count) and criterion scores.
struct NetworkEstimate {
  Eigen::MatrixXd A_hat;  // (i,j): effect of variable i at t-1 on j at t
  double rho = 0.0;
  int df = 0;
  double bic = 0.0;
  double aic = 0.0;
};

// Centers and unit-scales every column (variance divisor n = rows - 1).
// Missing entries (NaN) are imputed when impute is true: interior gaps get
// the mean of the nearest observed value before and after, boundary gaps
// the single nearest observed value.
TimeCourseMatrix standardize(const Eigen::MatrixXd& raw,
                             const std::vector<std::string>& names,
                             bool impute = false);

EmpiricalMoments empirical_moments(const TimeCourseMatrix& X);

// Unpenalized maximum-likelihood estimate S^{-1} V. Fails with
// SingularCovariance when cond(S) exceeds the cap (always when n < p).
Eigen::MatrixXd mle(const EmpiricalMoments& m, double cond_cap = 1e12);

int count_nonzeros(const Eigen::MatrixXd& A);

}  // namespace dynnet

#endif  // DYNNET_CORE_HPP
