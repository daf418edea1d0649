#include "dynnet/simulate.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>

namespace dynnet {

std::mt19937_64 replicate_rng(unsigned master_seed, int replicate) {
  std::seed_seq seq{master_seed, static_cast<unsigned>(replicate)};
  return std::mt19937_64(seq);
}

std::pair<EdgeSet, NodeClassification> sample_hub_graph(
    const HubGraphConfig& cfg, std::mt19937_64& rng) {
  const int p = cfg.p;
  const int K = cfg.K < 0 ? 2 * p : cfg.K;
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  if (K > static_cast<long>(p) * p)
    throw InfeasibleEdgeCount(K, p * p);  // infeasible for any classification

  // Redraw the class vector until it has a hub and can host K distinct
  // edges; a draw with too few hubs cannot realize the requested edge count.
  NodeClassification z;
  z.source = ClassificationSource::Known;
  std::vector<int> hubs, leaves;
  long nh = 0, nl = 0;
  for (int attempt = 0;; ++attempt) {
    if (attempt >= 1000000)
      throw InfeasibleEdgeCount(K, static_cast<int>(nh * nl + nh * nh));
    z.labels.assign(p, NodeLabel::Leaf);
    hubs.clear();
    leaves.clear();
    for (int i = 0; i < p; ++i) {
      if (unif(rng) < cfg.hub_prob) {
        z.labels[i] = NodeLabel::Hub;
        hubs.push_back(i);
      } else {
        leaves.push_back(i);
      }
    }
    nh = static_cast<long>(hubs.size());
    nl = static_cast<long>(leaves.size());
    if (nh >= 1 && K <= nh * nl + nh * nh) break;
  }

  EdgeSet edges;
  long hl_used = 0, hh_used = 0;
  while (static_cast<int>(edges.size()) < K) {
    const bool to_leaf = unif(rng) < cfg.hub_to_leaf;
    if (to_leaf && (nl == 0 || hl_used == nh * nl)) continue;
    if (!to_leaf && hh_used == nh * nh) continue;
    std::uniform_int_distribution<int> pick_hub(0, static_cast<int>(nh) - 1);
    const int src = hubs[pick_hub(rng)];
    int dst;
    if (to_leaf) {
      std::uniform_int_distribution<int> pick_leaf(0, static_cast<int>(nl) - 1);
      dst = leaves[pick_leaf(rng)];
    } else {
      dst = hubs[pick_hub(rng)];
    }
    if (edges.insert({src, dst}).second) (to_leaf ? hl_used : hh_used)++;
  }
  return {std::move(edges), std::move(z)};
}

Eigen::MatrixXd sample_coefficients(const EdgeSet& edges, int p,
                                    std::mt19937_64& rng) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(p, p);
  std::uniform_real_distribution<double> mag(0.2, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (const auto& [src, dst] : edges) {
    const double value = mag(rng);
    A(src, dst) = unif(rng) < 0.5 ? -value : value;
  }
  return A;
}

Eigen::MatrixXd sample_var1_raw(const Eigen::MatrixXd& A, int n, double sigma2,
                                std::mt19937_64& rng) {
  const int p = static_cast<int>(A.rows());
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  Eigen::MatrixXd X(n + 1, p);
  for (int j = 0; j < p; ++j) X(0, j) = noise(rng);
  Eigen::RowVectorXd eps(p);
  for (int t = 1; t <= n; ++t) {
    for (int j = 0; j < p; ++j) eps[j] = noise(rng);
    X.row(t) = X.row(t - 1) * A + eps;
  }
  return X;
}

SimulatedInstance simulate_instance(const HubGraphConfig& cfg, int n,
                                    double sigma2, unsigned seed) {
  std::mt19937_64 rng(seed);
  SimulatedInstance inst;
  inst.seed = seed;
  auto [edges, classes] = sample_hub_graph(cfg, rng);
  inst.edges = std::move(edges);
  inst.classes = std::move(classes);
  inst.A_true = sample_coefficients(inst.edges, cfg.p, rng);
  // Project onto the stable region: an explosive A makes the trajectory
  // collapse onto its leading mode and the empirical moments degenerate.
  // Rescaling preserves the support and the relative coefficient sizes.
  const double radius = inst.A_true.eigenvalues().cwiseAbs().maxCoeff();
  if (radius >= kSpectralCap) inst.A_true *= kSpectralCap / radius;
  const Eigen::MatrixXd raw = sample_var1_raw(inst.A_true, n, sigma2, rng);
  inst.X = standardize(raw, {});
  return inst;
}

IrrepresentabilityReport check_irrepresentability(
    const EmpiricalMoments& m, const Eigen::MatrixXd& A_true) {
  const int p = m.p;
  IrrepresentabilityReport rep;
  rep.column_passes.assign(p, true);
  int failing = 0;
  for (int k = 0; k < p; ++k) {
    std::vector<int> support, rest;
    for (int i = 0; i < p; ++i)
      (A_true(i, k) != 0.0 ? support : rest).push_back(i);
    if (support.empty()) continue;  // vacuous pass

    const int s = static_cast<int>(support.size());
    Eigen::MatrixXd Sii(s, s);
    Eigen::VectorXd sign_i(s);
    for (int r = 0; r < s; ++r) {
      sign_i[r] = A_true(support[r], k) > 0.0 ? 1.0 : -1.0;
      for (int c = 0; c < s; ++c) Sii(r, c) = m.S(support[r], support[c]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Sii);
    if (!(es.eigenvalues().minCoeff() >
          1e-12 * std::max(es.eigenvalues().maxCoeff(), 1.0)))
      throw SingularSupportBlock(k);
    const Eigen::VectorXd x = Sii.ldlt().solve(sign_i);

    double worst = 0.0;
    for (int i : rest) {
      double w = 0.0;
      for (int r = 0; r < s; ++r) w += m.S(i, support[r]) * x[r];
      worst = std::max(worst, std::abs(w));
    }
    if (worst > 1.0) {
      rep.column_passes[k] = false;
      ++failing;
    }
  }
  rep.fraction_failing = static_cast<double>(failing) / p;
  return rep;
}

}  // namespace dynnet
