#ifndef DYNNET_SOLVER_HPP
#define DYNNET_SOLVER_HPP

#include <optional>
#include <vector>

#include "dynnet/core.hpp"
#include "dynnet/penalty.hpp"

namespace dynnet {

// One column of the network problem:
//   min_beta  1/2 beta' S beta - beta' v + || lambda .* beta ||_1
// Infinite lambda entries lock the coefficient at zero.
struct ColumnProblem {
  Eigen::MatrixXd S;
  Eigen::VectorXd v;       // one column of V
  Eigen::VectorXd lambda;  // nonnegative, +inf allowed
};

struct ActiveSetState {
  Eigen::VectorXd beta;
  std::vector<int> active;  // indices with beta_i != 0, insertion order
  Eigen::VectorXd theta;    // sign(beta_i) on active, in [-1,1] elsewhere
};

struct SolverOptions {
  double tol = 1e-9;
  int max_iterations_per_p = 50;  // cap = 50 * p
  int threads = 1;
};

// Active-set solve of one column problem. Starts from zero or from a
// warm-start state; the returned beta satisfies the KKT conditions within
// tol and contains exact zeros off the active set.
ActiveSetState solve_column(const ColumnProblem& prob,
                            const std::optional<ActiveSetState>& warm = {},
                            double tol = 1e-9, int max_iter = -1,
                            std::vector<double>* objective_trace = nullptr);

// Objective of the column problem (infinite penalties contribute only
// through their locked-at-zero coordinates).
double column_objective(const ColumnProblem& prob, const Eigen::VectorXd& beta);

// Maximal coordinate-wise distance from 0 to the subdifferential of the
// column objective at beta; 0 iff beta is optimal.
double kkt_residual(const ColumnProblem& prob, const Eigen::VectorXd& beta);

// Binds the p independent column solutions into a network estimate.
// Columns may be solved concurrently; results are identical to sequential.
NetworkEstimate solve_network(const EmpiricalMoments& m,
                              const PenaltyMatrix& P,
                              const std::vector<ActiveSetState>* warm = nullptr,
                              const SolverOptions& opts = {},
                              std::vector<ActiveSetState>* states_out = nullptr);

}  // namespace dynnet

#endif  // DYNNET_SOLVER_HPP
