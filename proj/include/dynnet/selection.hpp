#ifndef DYNNET_SELECTION_HPP
#define DYNNET_SELECTION_HPP

#include "dynnet/solver.hpp"

namespace dynnet {

enum class Criterion { BIC, AIC };
enum class PathStop { GridExhausted, ColumnCapacityReached };

struct PenaltyPath {
  std::vector<double> grid;  // strictly decreasing, only the solved prefix
  std::vector<NetworkEstimate> estimates;
  PathStop stop_reason = PathStop::GridExhausted;
};

// Smallest global rho at which every column's KKT condition holds at zero:
// max over finite base entries of |V_ij| / base_ij.
double rho_max(const EmpiricalMoments& m, const PenaltyMatrix& base_at_rho1);

// Log-spaced decreasing grid from rho_max down to rho_max * decay^(size-1).
std::vector<double> make_grid(double rho_max_value, int size = 50,
                              double decay = 0.0);

double bic(const EmpiricalMoments& m, const NetworkEstimate& est);
double aic(const EmpiricalMoments& m, const NetworkEstimate& est);

// Warm-started sweep down the grid. Stops early once any column's active
// count reaches min(n, p) or the solver hits a rank limit.
PenaltyPath solve_path(const EmpiricalMoments& m, const PenaltySpec& spec,
                       const std::vector<double>& grid,
                       const SolverOptions& opts = {});

// Argmax of the chosen criterion; ties resolve toward larger rho.
const NetworkEstimate& select_best(const PenaltyPath& path, Criterion crit);

}  // namespace dynnet

#endif  // DYNNET_SELECTION_HPP
