#include "dynnet/core.hpp"

#include <cmath>

namespace dynnet {

namespace {

void impute_column(Eigen::MatrixXd& M, int j, const std::string& name) {
  const int rows = static_cast<int>(M.rows());
  // Indices of observed entries, in time order.
  std::vector<int> obs;
  for (int t = 0; t < rows; ++t)
    if (!std::isnan(M(t, j))) obs.push_back(t);
  if (obs.empty()) throw AllMissingColumn(name);

  for (int t = 0; t < rows; ++t) {
    if (!std::isnan(M(t, j))) continue;
    // nearest observed neighbours before and after t
    int before = -1, after = -1;
    for (int o : obs) {
      if (o < t) before = o;
      if (o > t) { after = o; break; }
    }
    if (before >= 0 && after >= 0)
      M(t, j) = 0.5 * (M(before, j) + M(after, j));
    else if (before >= 0)
      M(t, j) = M(before, j);
    else
      M(t, j) = M(after, j);
  }
}

}  // namespace

TimeCourseMatrix standardize(const Eigen::MatrixXd& raw,
                             const std::vector<std::string>& names,
                             bool impute) {
  const int rows = static_cast<int>(raw.rows());
  const int p = static_cast<int>(raw.cols());
  if (rows < 2) throw Error("need at least two time points");
  if (p < 1) throw Error("need at least one variable");

  std::vector<std::string> col_names = names;
  if (col_names.empty()) {
    col_names.resize(p);
    for (int j = 0; j < p; ++j) col_names[j] = "V" + std::to_string(j + 1);
  }

  Eigen::MatrixXd M = raw;
  for (int j = 0; j < p; ++j) {
    bool has_missing = false;
    for (int t = 0; t < rows; ++t)
      if (std::isnan(M(t, j))) {
        if (!impute) throw MissingValueWithImputeOff(t, j);
        has_missing = true;
      }
    if (has_missing) impute_column(M, j, col_names[j]);
  }

  const double n = static_cast<double>(rows - 1);
  for (int j = 0; j < p; ++j) {
    const double mean = M.col(j).mean();
    M.col(j).array() -= mean;
    const double var = M.col(j).squaredNorm() / n;
    if (var < 1e-24) throw ConstantColumn(col_names[j]);
    M.col(j) /= std::sqrt(var);
  }

  TimeCourseMatrix out;
  out.values = std::move(M);
  out.names = std::move(col_names);
  out.standardized = true;
  return out;
}

EmpiricalMoments empirical_moments(const TimeCourseMatrix& X) {
  if (!X.standardized) throw Error("empirical_moments requires standardized data");
  const int n = X.transitions();
  const int p = X.vars();
  const auto past = X.values.topRows(n);     // X without last row
  const auto future = X.values.bottomRows(n);  // X without first row

  EmpiricalMoments m;
  m.S = (past.transpose() * past) / static_cast<double>(n);
  m.S = 0.5 * (m.S + m.S.transpose().eval());  // kill round-off asymmetry
  m.V = (past.transpose() * future) / static_cast<double>(n);
  m.n = n;
  m.p = p;
  return m;
}

Eigen::MatrixXd mle(const EmpiricalMoments& m, double cond_cap) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m.S);
  const double emin = es.eigenvalues().minCoeff();
  const double emax = es.eigenvalues().maxCoeff();
  const double cond = (emin <= 0.0) ? std::numeric_limits<double>::infinity()
                                    : emax / emin;
  if (!(cond < cond_cap)) throw SingularCovariance(cond);
  return m.S.ldlt().solve(m.V);
}

int count_nonzeros(const Eigen::MatrixXd& A) {
  int df = 0;
  for (int j = 0; j < A.cols(); ++j)
    for (int i = 0; i < A.rows(); ++i)
      if (A(i, j) != 0.0) ++df;
  return df;
}

}  // namespace dynnet
