#include "dynnet/eval.hpp"

namespace dynnet {

ConfusionCounts confusion(const Eigen::MatrixXd& A_hat, const EdgeSet& truth,
                          bool exclude_diagonal) {
  const int p = static_cast<int>(A_hat.rows());
  ConfusionCounts c;
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) {
      if (exclude_diagonal && i == j) continue;
      const bool predicted = A_hat(i, j) != 0.0;
      const bool actual = truth.count({i, j}) > 0;
      if (predicted && actual) ++c.tp;
      else if (predicted) ++c.fp;
      else if (actual) ++c.fn;
      else ++c.tn;
    }
  return c;
}

Rates rates(const ConfusionCounts& c) {
  Rates r;
  if (c.tp + c.fp > 0)
    r.precision = static_cast<double>(c.tp) / (c.tp + c.fp);
  if (c.tp + c.fn > 0)
    r.recall = static_cast<double>(c.tp) / (c.tp + c.fn);
  if (c.fp + c.tn > 0)
    r.fallout = static_cast<double>(c.fp) / (c.fp + c.tn);
  return r;
}

}  // namespace dynnet
