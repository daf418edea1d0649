#ifndef DYNNET_PENALTY_HPP
#define DYNNET_PENALTY_HPP

#include <optional>

#include "dynnet/core.hpp"

namespace dynnet {

enum class NodeLabel { Hub, Leaf };
enum class ClassificationSource { Known, Inferred };

struct GaussianMixture1D {
  double mean[2] = {0.0, 0.0};
  double var[2] = {1.0, 1.0};
  double weight[2] = {0.5, 0.5};
};

struct NodeClassification {
  std::vector<NodeLabel> labels;
  ClassificationSource source = ClassificationSource::Known;
  std::optional<GaussianMixture1D> mixture;
  bool degenerate = false;  // all-Leaf fallback was taken

  int hubs() const {
    int k = 0;
    for (auto l : labels)
      if (l == NodeLabel::Hub) ++k;
    return k;
  }
};

enum class PenaltyRegime { Lasso, Adaptive, KnownClasses, InferredClasses };

// Which weighting to apply, up to the global level rho. Class-based regimes
// penalize per the source node (row): hub rows get weight rho_hub, leaf rows
// rho_leaf with rho_leaf / rho_hub = ratio > 1. When normalize is set the
// pair is rescaled so the class-size-weighted mean weight is 1.
struct PenaltySpec {
  PenaltyRegime regime = PenaltyRegime::Lasso;
  double rho = 1.0;
  double ratio = 2.0;
  bool normalize = true;
  std::optional<Eigen::MatrixXd> init;          // Adaptive / InferredClasses
  std::optional<NodeClassification> classes;    // KnownClasses
  std::optional<Eigen::MatrixXd> individual;    // per-edge rho_ij, default 1
  int seed = 0;                                 // class inference
};

struct PenaltyMatrix {
  Eigen::MatrixXd P;  // entries in [0, +inf]
};

PenaltyMatrix build_penalty(const PenaltySpec& spec, int p);

Eigen::VectorXd row_l1_norms(const Eigen::MatrixXd& A);

struct GmmFit {
  std::vector<int> labels;  // component index per value
  GaussianMixture1D params;
};

// Two-component univariate Gaussian mixture with unequal variances, fitted
// by EM from a deterministic largest-gap split. Same seed, same labels.
GmmFit fit_gmm_1d(const Eigen::VectorXd& values, int seed = 0);

// Clusters row l1-norms of an initial estimate and labels the class with
// the larger mean absolute entry as Hub. Degenerate inputs (all norms
// equal, zero matrix) fall back to all-Leaf with the degenerate flag set.
NodeClassification infer_classes(const Eigen::MatrixXd& A0, int seed = 0);

}  // namespace dynnet

#endif  // DYNNET_PENALTY_HPP
