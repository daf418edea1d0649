#ifndef DYNNET_SIMULATE_HPP
#define DYNNET_SIMULATE_HPP

#include <random>
#include <set>
#include <utility>

#include "dynnet/penalty.hpp"

namespace dynnet {

using EdgeSet = std::set<std::pair<int, int>>;  // (source, target)

struct HubGraphConfig {
  int p = 20;
  int K = -1;                // default 2p
  double hub_prob = 0.1;
  double hub_to_leaf = 0.85;  // remaining edges stay within hubs
};

struct SimulatedInstance {
  Eigen::MatrixXd A_true;
  EdgeSet edges;
  NodeClassification classes;
  TimeCourseMatrix X;
  unsigned seed = 0;
};

// Hub-structured random graph: classes ~ Bernoulli(hub_prob) per node
// (redrawn if no hub comes up), K distinct edges typed hub->leaf or
// hub->hub; only hubs ever emit. Self-loops within hubs are allowed.
std::pair<EdgeSet, NodeClassification> sample_hub_graph(
    const HubGraphConfig& cfg, std::mt19937_64& rng);

// Coefficients uniform on [-1,-0.2] u [0.2,1] on the edge support.
Eigen::MatrixXd sample_coefficients(const EdgeSet& edges, int p,
                                    std::mt19937_64& rng);

// Raw VAR(1) trajectory: X_0 ~ N(0, sigma2 I), X_t = X_{t-1} A + eps_t.
// Rows 0..n, so n transitions.
Eigen::MatrixXd sample_var1_raw(const Eigen::MatrixXd& A, int n, double sigma2,
                                std::mt19937_64& rng);

// Sampled A matrices with spectral radius at or above this cap are rescaled
// onto it so the generated process stays stable.
inline constexpr double kSpectralCap = 0.99;

// Full instance as fed to the pipeline: trajectory standardized in place.
// The coefficient matrix is projected onto spectral radius kSpectralCap.
SimulatedInstance simulate_instance(const HubGraphConfig& cfg, int n,
                                    double sigma2, unsigned seed);

// RNG stream for replicate r of a master seed; streams are independent.
std::mt19937_64 replicate_rng(unsigned master_seed, int replicate);

struct IrrepresentabilityReport {
  double fraction_failing = 0.0;
  std::vector<bool> column_passes;
};

// Per-column check of max | S_{Ic,I} S_{I,I}^{-1} sign(A_true_{I,k}) | <= 1
// with I the true support of column k; empty columns pass vacuously.
IrrepresentabilityReport check_irrepresentability(const EmpiricalMoments& m,
                                                  const Eigen::MatrixXd& A_true);

}  // namespace dynnet

#endif  // DYNNET_SIMULATE_HPP
