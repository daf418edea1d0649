#include "dynnet/selection.hpp"

#include <algorithm>
#include <cmath>

namespace dynnet {

double rho_max(const EmpiricalMoments& m, const PenaltyMatrix& base) {
  double best = -1.0;
  for (int j = 0; j < m.p; ++j)
    for (int i = 0; i < m.p; ++i) {
      const double b = base.P(i, j);
      if (std::isinf(b) || b <= 0.0) continue;
      best = std::max(best, std::abs(m.V(i, j)) / b);
    }
  if (best < 0.0) throw AllInfinitePenalties();
  return best;
}

std::vector<double> make_grid(double rho_max_value, int size, double decay) {
  if (size < 2) throw Error("grid needs at least two points");
  if (decay <= 0.0)  // default: terminal point at rho_max / 100
    decay = std::pow(0.01, 1.0 / (size - 1));
  if (decay >= 1.0) throw Error("grid decay must lie in (0,1)");
  std::vector<double> grid(size);
  for (int k = 0; k < size; ++k)
    grid[k] = rho_max_value * std::pow(decay, k);
  return grid;
}

double bic(const EmpiricalMoments& m, const NetworkEstimate& est) {
  const double tr_va = (m.V.transpose() * est.A_hat).trace();
  const double tr_asa = (est.A_hat.transpose() * m.S * est.A_hat).trace();
  return m.n * (tr_va - 0.5 * tr_asa) -
         0.5 * std::log(static_cast<double>(m.n)) * est.df;
}

double aic(const EmpiricalMoments& m, const NetworkEstimate& est) {
  const double tr_va = (m.V.transpose() * est.A_hat).trace();
  const double tr_asa = (est.A_hat.transpose() * m.S * est.A_hat).trace();
  return m.n * (tr_va - 0.5 * tr_asa) - est.df;
}

PenaltyPath solve_path(const EmpiricalMoments& m, const PenaltySpec& spec,
                       const std::vector<double>& grid,
                       const SolverOptions& opts) {
  for (size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] < grid[k - 1])) throw Error("grid must be strictly decreasing");

  const int capacity = std::min(m.n, m.p);
  PenaltyPath path;
  std::vector<ActiveSetState> warm;
  bool have_warm = false;

  for (double rho : grid) {
    PenaltySpec level = spec;
    level.rho = rho;
    const PenaltyMatrix P = build_penalty(level, m.p);

    NetworkEstimate est;
    std::vector<ActiveSetState> states;
    try {
      est = solve_network(m, P, have_warm ? &warm : nullptr, opts, &states);
    } catch (const SingularActiveBlock&) {
      path.stop_reason = PathStop::ColumnCapacityReached;
      return path;
    }
    est.rho = rho;

    path.grid.push_back(rho);
    path.estimates.push_back(std::move(est));

    int max_active = 0;
    for (const auto& st : states)
      max_active = std::max(max_active, static_cast<int>(st.active.size()));
    if (max_active >= capacity) {
      path.stop_reason = PathStop::ColumnCapacityReached;
      return path;
    }
    warm = std::move(states);
    have_warm = true;
  }
  path.stop_reason = PathStop::GridExhausted;
  return path;
}

const NetworkEstimate& select_best(const PenaltyPath& path, Criterion crit) {
  if (path.estimates.empty()) throw Error("empty penalty path");
  size_t best = 0;
  for (size_t k = 1; k < path.estimates.size(); ++k) {
    const double score = crit == Criterion::BIC ? path.estimates[k].bic
                                                : path.estimates[k].aic;
    const double incumbent = crit == Criterion::BIC ? path.estimates[best].bic
                                                    : path.estimates[best].aic;
    if (score > incumbent) best = k;  // strict: ties keep the larger rho
  }
  return path.estimates[best];
}

}  // namespace dynnet
