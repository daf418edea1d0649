#include "dynnet/solver.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace dynnet {

namespace {

constexpr double kZeroTol = 1e-12;  // deactivation threshold
constexpr double kInf = std::numeric_limits<double>::infinity();

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Solves S_AA x = rhs for the current active block. The block is tiny under
// sparsity, so a fresh eigendecomposition per step is affordable and doubles
// as the singularity check: an active set larger than rank(S) shows up here.
Eigen::VectorXd solve_active_block(const Eigen::MatrixXd& S,
                                   const std::vector<int>& active,
                                   const Eigen::VectorXd& rhs) {
  const int a = static_cast<int>(active.size());
  Eigen::MatrixXd Saa(a, a);
  for (int r = 0; r < a; ++r)
    for (int c = 0; c < a; ++c) Saa(r, c) = S(active[r], active[c]);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Saa);
  const double emax = es.eigenvalues().maxCoeff();
  const double emin = es.eigenvalues().minCoeff();
  if (!(emin > 1e-10 * std::max(emax, 1.0))) throw SingularActiveBlock();
  return es.eigenvectors() *
         (es.eigenvectors().transpose() * rhs).cwiseQuotient(es.eigenvalues());
}

}  // namespace

double kkt_residual(const ColumnProblem& prob, const Eigen::VectorXd& beta) {
  const Eigen::VectorXd g = prob.S * beta - prob.v;
  double worst = 0.0;
  for (int i = 0; i < beta.size(); ++i) {
    double r;
    if (beta[i] != 0.0)
      r = std::abs(g[i] + prob.lambda[i] * sgn(beta[i]));
    else if (std::isinf(prob.lambda[i]))
      r = 0.0;
    else
      r = std::max(0.0, std::abs(g[i]) - prob.lambda[i]);
    worst = std::max(worst, r);
  }
  return worst;
}

double column_objective(const ColumnProblem& prob, const Eigen::VectorXd& beta) {
  double obj = 0.5 * beta.dot(prob.S * beta) - beta.dot(prob.v);
  for (int i = 0; i < beta.size(); ++i)
    if (beta[i] != 0.0) obj += prob.lambda[i] * std::abs(beta[i]);
  return obj;
}

ActiveSetState solve_column(const ColumnProblem& prob,
                            const std::optional<ActiveSetState>& warm,
                            double tol, int max_iter,
                            std::vector<double>* objective_trace) {
  const int p = static_cast<int>(prob.v.size());
  if (max_iter < 0) max_iter = 50 * p;

  ActiveSetState st;
  st.beta = Eigen::VectorXd::Zero(p);
  st.theta = Eigen::VectorXd::Zero(p);
  if (warm) {
    st.beta = warm->beta;
    for (int i = 0; i < p; ++i) {
      if (std::isinf(prob.lambda[i])) st.beta[i] = 0.0;  // locked out
      if (st.beta[i] != 0.0) {
        st.active.push_back(i);
        st.theta[i] = sgn(st.beta[i]);
      }
    }
  }

  for (int iter = 0; iter < max_iter; ++iter) {
    if (!st.active.empty()) {
      // 1. Newton step over the active set, sign approximated by theta.
      const int a = static_cast<int>(st.active.size());
      Eigen::VectorXd rhs(a);
      for (int r = 0; r < a; ++r) {
        const int i = st.active[r];
        rhs[r] = prob.v[i] - prob.lambda[i] * st.theta[i];
      }
      const Eigen::VectorXd target = solve_active_block(prob.S, st.active, rhs);

      bool consistent = true;
      for (int r = 0; r < a; ++r)
        if (sgn(target[r]) != st.theta[st.active[r]]) consistent = false;

      if (consistent) {
        for (int r = 0; r < a; ++r) st.beta[st.active[r]] = target[r];
      } else {
        // Shrink the step to the first sign crossing, drop that variable.
        double gamma = 1.0;
        int cross = -1;
        for (int r = 0; r < a; ++r) {
          const int i = st.active[r];
          const double h = target[r] - st.beta[i];
          if (h == 0.0) continue;
          const double g = -st.beta[i] / h;
          if (g > 0.0 && g < gamma) {
            gamma = g;
            cross = r;
          }
        }
        if (cross < 0) {
          // target flips a sign without crossing zero from here; take the
          // full step and let the zero scan / next iteration resolve it
          for (int r = 0; r < a; ++r) st.beta[st.active[r]] = target[r];
        } else {
          for (int r = 0; r < a; ++r) {
            const int i = st.active[r];
            st.beta[i] += gamma * (target[r] - st.beta[i]);
          }
          st.beta[st.active[cross]] = 0.0;
        }
      }

      // 2. Deactivate anything that reached zero.
      for (auto it = st.active.begin(); it != st.active.end();) {
        const int i = *it;
        if (std::abs(st.beta[i]) < kZeroTol) {
          st.beta[i] = 0.0;
          st.theta[i] = 0.0;
          it = st.active.erase(it);
        } else {
          st.theta[i] = sgn(st.beta[i]);
          ++it;
        }
      }
    }

    if (objective_trace && !st.active.empty())
      objective_trace->push_back(column_objective(prob, st.beta));

    // 3. Optimality test.
    const Eigen::VectorXd g = prob.S * st.beta - prob.v;
    double active_viol = 0.0;
    for (int i : st.active)
      active_viol = std::max(active_viol,
                             std::abs(g[i] + prob.lambda[i] * st.theta[i]));
    if (active_viol > tol) continue;  // keep optimizing over the current set

    double best_nu = 0.0;
    int best = -1;
    for (int i = 0; i < p; ++i) {
      if (st.beta[i] != 0.0 || std::isinf(prob.lambda[i])) continue;
      const double nu = std::max(0.0, std::abs(g[i]) - prob.lambda[i]);
      if (nu > best_nu) {  // strict: ties go to the lowest index
        best_nu = nu;
        best = i;
      }
    }
    if (best_nu <= tol) return st;

    st.active.push_back(best);
    st.theta[best] = -sgn(g[best]);
  }
  throw NonConvergence(max_iter);
}

NetworkEstimate solve_network(const EmpiricalMoments& m, const PenaltyMatrix& P,
                              const std::vector<ActiveSetState>* warm,
                              const SolverOptions& opts,
                              std::vector<ActiveSetState>* states_out) {
  const int p = m.p;
  if (P.P.rows() != p || P.P.cols() != p)
    throw Error("penalty matrix dimension mismatch");

  NetworkEstimate est;
  est.A_hat = Eigen::MatrixXd::Zero(p, p);
  std::vector<ActiveSetState> states(p);
  std::vector<std::exception_ptr> failures(p);

  auto run_columns = [&](int lo, int hi) {
    for (int k = lo; k < hi; ++k) {
      try {
        ColumnProblem prob{m.S, m.V.col(k), P.P.col(k)};
        std::optional<ActiveSetState> w;
        if (warm && k < static_cast<int>(warm->size())) w = (*warm)[k];
        states[k] = solve_column(prob, w, opts.tol,
                                 opts.max_iterations_per_p * p);
      } catch (...) {
        failures[k] = std::current_exception();
      }
    }
  };

  const int nthreads = std::max(1, std::min(opts.threads, p));
  if (nthreads == 1) {
    run_columns(0, p);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (p + nthreads - 1) / nthreads;
    for (int t = 0; t < nthreads; ++t)
      pool.emplace_back(run_columns, t * chunk, std::min(p, (t + 1) * chunk));
    for (auto& th : pool) th.join();
  }

  for (int k = 0; k < p; ++k) {
    if (failures[k]) {
      try {
        std::rethrow_exception(failures[k]);
      } catch (const SingularActiveBlock&) {
        throw SingularActiveBlock(k);
      } catch (const NonConvergence& e) {
        throw NonConvergence(e.iterations, k);
      }
    }
    est.A_hat.col(k) = states[k].beta;
  }

  est.df = count_nonzeros(est.A_hat);
  const double tr_va = (m.V.transpose() * est.A_hat).trace();
  const double tr_asa = (est.A_hat.transpose() * m.S * est.A_hat).trace();
  const double fit = m.n * (tr_va - 0.5 * tr_asa);
  est.bic = fit - 0.5 * std::log(static_cast<double>(m.n)) * est.df;
  est.aic = fit - est.df;
  if (states_out) *states_out = std::move(states);
  return est;
}

}  // namespace dynnet
