#ifndef DYNNET_EVAL_HPP
#define DYNNET_EVAL_HPP

#include <optional>

#include "dynnet/simulate.hpp"

namespace dynnet {

struct ConfusionCounts {
  long tp = 0, fp = 0, tn = 0, fn = 0;
};

// Support recovery over all p^2 ordered pairs, diagonal included unless
// exclude_diagonal is set (external benchmarks sometimes drop self-loops).
// Positive means an exactly nonzero entry of A_hat; signs are not compared.
ConfusionCounts confusion(const Eigen::MatrixXd& A_hat, const EdgeSet& truth,
                          bool exclude_diagonal = false);

struct Rates {
  std::optional<double> precision;  // absent when tp + fp = 0
  std::optional<double> recall;
  std::optional<double> fallout;
};

Rates rates(const ConfusionCounts& c);

}  // namespace dynnet

#endif  // DYNNET_EVAL_HPP
