#include "dynnet/penalty.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dynnet {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// (rho_hub, rho_leaf) for a classification: ratio fixed, optionally rescaled
// so the class-size-weighted mean weight over rows equals 1.
std::pair<double, double> class_weights(const NodeClassification& z,
                                        double ratio, bool normalize) {
  if (!normalize) return {1.0, ratio};
  const int p = static_cast<int>(z.labels.size());
  const int nh = z.hubs();
  const int nl = p - nh;
  const double hub = static_cast<double>(p) / (nh + ratio * nl);
  return {hub, ratio * hub};
}

double normal_log_pdf(double x, double mean, double var) {
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * M_PI * var) + d * d / var);
}

}  // namespace

Eigen::VectorXd row_l1_norms(const Eigen::MatrixXd& A) {
  return A.cwiseAbs().rowwise().sum();
}

GmmFit fit_gmm_1d(const Eigen::VectorXd& values, int /*seed*/) {
  const int p = static_cast<int>(values.size());
  if (p < 2) throw DegenerateInput("need at least two values");

  // Largest-gap split on the sorted values gives a deterministic start.
  std::vector<int> order(p);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return values[a] < values[b]; });
  double best_gap = 0.0;
  int split = -1;
  for (int r = 0; r + 1 < p; ++r) {
    const double gap = values[order[r + 1]] - values[order[r]];
    if (gap > best_gap) {
      best_gap = gap;
      split = r + 1;
    }
  }
  if (split < 0) throw DegenerateInput("all values equal");

  const double total_mean = values.mean();
  const double total_var = (values.array() - total_mean).square().mean();
  const double var_floor = 1e-6 * total_var;

  GaussianMixture1D gm;
  for (int c = 0; c < 2; ++c) {
    const int lo = (c == 0) ? 0 : split;
    const int hi = (c == 0) ? split : p;
    const int cnt = hi - lo;
    double mean = 0.0;
    for (int r = lo; r < hi; ++r) mean += values[order[r]];
    mean /= cnt;
    double var = 0.0;
    for (int r = lo; r < hi; ++r)
      var += (values[order[r]] - mean) * (values[order[r]] - mean);
    var = std::max(var / cnt, var_floor);
    gm.mean[c] = mean;
    gm.var[c] = var;
    gm.weight[c] = static_cast<double>(cnt) / p;
  }

  Eigen::MatrixXd resp(p, 2);
  double prev_ll = -kInf;
  for (int it = 0; it < 500; ++it) {
    // E step
    double ll = 0.0;
    for (int i = 0; i < p; ++i) {
      double lp[2];
      for (int c = 0; c < 2; ++c)
        lp[c] = std::log(gm.weight[c]) +
                normal_log_pdf(values[i], gm.mean[c], gm.var[c]);
      const double mx = std::max(lp[0], lp[1]);
      const double lse = mx + std::log(std::exp(lp[0] - mx) + std::exp(lp[1] - mx));
      resp(i, 0) = std::exp(lp[0] - lse);
      resp(i, 1) = std::exp(lp[1] - lse);
      ll += lse;
    }
    if (ll - prev_ll < 1e-8 && it > 0) break;
    prev_ll = ll;

    // M step
    for (int c = 0; c < 2; ++c) {
      const double nc = resp.col(c).sum();
      if (nc < 1e-10) {
        gm.weight[c] = 1e-10;
        continue;
      }
      gm.weight[c] = nc / p;
      gm.mean[c] = (resp.col(c).array() * values.array()).sum() / nc;
      const double var =
          (resp.col(c).array() * (values.array() - gm.mean[c]).square()).sum() /
          nc;
      gm.var[c] = std::max(var, var_floor);
    }
  }

  GmmFit fit;
  fit.params = gm;
  fit.labels.resize(p);
  for (int i = 0; i < p; ++i) fit.labels[i] = resp(i, 1) > resp(i, 0) ? 1 : 0;
  return fit;
}

NodeClassification infer_classes(const Eigen::MatrixXd& A0, int seed) {
  const int p = static_cast<int>(A0.rows());
  NodeClassification z;
  z.source = ClassificationSource::Inferred;
  z.labels.assign(p, NodeLabel::Leaf);

  const Eigen::VectorXd norms = row_l1_norms(A0);
  const double spread = norms.maxCoeff() - norms.minCoeff();
  if (spread <= 1e-12 * std::max(1.0, norms.cwiseAbs().maxCoeff())) {
    z.degenerate = true;  // A0 = 0, identity, any equal-norm matrix
    return z;
  }

  GmmFit fit;
  try {
    fit = fit_gmm_1d(norms, seed);
  } catch (const DegenerateInput&) {
    z.degenerate = true;
    return z;
  }
  z.mixture = fit.params;

  // Hub class = the one with the larger mean absolute entry across its rows.
  double sum_abs[2] = {0.0, 0.0};
  int count[2] = {0, 0};
  for (int i = 0; i < p; ++i) {
    sum_abs[fit.labels[i]] += A0.row(i).cwiseAbs().sum();
    ++count[fit.labels[i]];
  }
  double mean_abs[2];
  for (int c = 0; c < 2; ++c)
    mean_abs[c] = count[c] > 0 ? sum_abs[c] / (static_cast<double>(count[c]) * p)
                               : -1.0;
  const int hub_class = mean_abs[1] > mean_abs[0] ? 1 : 0;
  for (int i = 0; i < p; ++i)
    z.labels[i] = fit.labels[i] == hub_class ? NodeLabel::Hub : NodeLabel::Leaf;
  return z;
}

PenaltyMatrix build_penalty(const PenaltySpec& spec, int p) {
  if (!(spec.rho > 0.0)) throw NonPositiveRho(spec.rho);
  if (!(spec.ratio > 1.0)) throw Error("penalty ratio must exceed 1");

  Eigen::MatrixXd individual = Eigen::MatrixXd::Ones(p, p);
  if (spec.individual) {
    if (spec.individual->rows() != p || spec.individual->cols() != p)
      throw Error("individual penalty matrix dimension mismatch");
    if ((spec.individual->array() < 0.0).any())
      throw Error("individual penalties must be nonnegative");
    individual = *spec.individual;
  }

  Eigen::MatrixXd base(p, p);
  switch (spec.regime) {
    case PenaltyRegime::Lasso:
      base.setOnes();
      break;
    case PenaltyRegime::Adaptive: {
      if (!spec.init) throw MissingInit();
      for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j) {
          const double a = std::abs((*spec.init)(i, j));
          base(i, j) = (a == 0.0) ? kInf : std::max(1.0 / a, 1.0);
        }
      break;
    }
    case PenaltyRegime::KnownClasses:
    case PenaltyRegime::InferredClasses: {
      NodeClassification z;
      if (spec.regime == PenaltyRegime::KnownClasses) {
        if (!spec.classes) throw MissingClassification();
        z = *spec.classes;
      } else {
        if (!spec.init) throw MissingInit();
        z = infer_classes(*spec.init, spec.seed);
      }
      if (static_cast<int>(z.labels.size()) != p)
        throw Error("classification dimension mismatch");
      const auto [hub, leaf] = class_weights(z, spec.ratio, spec.normalize);
      for (int i = 0; i < p; ++i)
        base.row(i).setConstant(z.labels[i] == NodeLabel::Hub ? hub : leaf);
      break;
    }
  }

  PenaltyMatrix out;
  out.P.resize(p, p);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j)
      out.P(i, j) = std::isinf(base(i, j))
                        ? kInf
                        : spec.rho * individual(i, j) * base(i, j);
  return out;
}

}  // namespace dynnet
