#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "dynnet/selection.hpp"
#include "dynnet/solver.hpp"
#include "oracles.hpp"

using namespace dynnet;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ColumnProblem random_problem(int p, int n, std::mt19937& rng,
                             double lambda_scale) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ColumnProblem prob;
  prob.S = oracles::random_psd(p, n, rng);
  prob.v = oracles::random_vector(p, rng);
  prob.lambda.resize(p);
  for (int i = 0; i < p; ++i) prob.lambda[i] = lambda_scale * u(rng);
  return prob;
}

}  // namespace

TEST_CASE("penalty dominating v gives the null solution") {
  std::mt19937 rng(1);
  ColumnProblem prob = random_problem(4, 10, rng, 0.0);
  prob.lambda = prob.v.cwiseAbs().array() + 0.01;
  const ActiveSetState st = solve_column(prob);
  CHECK(st.beta.cwiseAbs().maxCoeff() == 0.0);
  CHECK(st.active.empty());
}

TEST_CASE("zero penalty recovers the OLS solution") {
  std::mt19937 rng(2);
  ColumnProblem prob = random_problem(5, 20, rng, 0.0);
  const ActiveSetState st = solve_column(prob);
  const Eigen::VectorXd ols = prob.S.fullPivLu().solve(prob.v);
  CHECK((st.beta - ols).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("scalar problem soft-thresholds") {
  ColumnProblem prob;
  prob.S = Eigen::MatrixXd::Identity(1, 1);
  prob.v = Eigen::VectorXd::Constant(1, 0.9);
  prob.lambda = Eigen::VectorXd::Constant(1, 0.5);
  const ActiveSetState st = solve_column(prob);
  CHECK(st.beta[0] == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("matches coordinate descent on a p=3 instance") {
  std::mt19937 rng(3);
  const ColumnProblem prob = random_problem(3, 12, rng, 0.5);
  const ActiveSetState st = solve_column(prob);
  const Eigen::VectorXd cd =
      oracles::coordinate_descent(prob.S, prob.v, prob.lambda);
  CHECK((st.beta - cd).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("oracle equivalence over random instances") {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> psize(1, 5);
  for (int trial = 0; trial < 60; ++trial) {
    const int p = psize(rng);
    const ColumnProblem prob = random_problem(p, p + 5, rng, 0.7);
    const ActiveSetState st = solve_column(prob);
    const Eigen::VectorXd cd =
        oracles::coordinate_descent(prob.S, prob.v, prob.lambda);
    CAPTURE(trial);
    CHECK((st.beta - cd).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(kkt_residual(prob, st.beta) <= 1e-8);
  }
}

TEST_CASE("infinite penalties never activate") {
  std::mt19937 rng(5);
  ColumnProblem prob = random_problem(6, 20, rng, 0.05);
  prob.lambda[1] = kInf;
  prob.lambda[4] = kInf;
  const ActiveSetState st = solve_column(prob);
  CHECK(st.beta[1] == 0.0);
  CHECK(st.beta[4] == 0.0);
  for (int i : st.active) CHECK(std::isfinite(prob.lambda[i]));
}

TEST_CASE("kkt residual at zero and at the scalar optimum") {
  ColumnProblem prob;
  prob.S = Eigen::MatrixXd::Identity(1, 1);
  prob.v = Eigen::VectorXd::Constant(1, 0.9);
  prob.lambda = Eigen::VectorXd::Constant(1, 0.5);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(1);
  CHECK(kkt_residual(prob, beta) == doctest::Approx(0.4));  // |v| - lambda
  beta[0] = 0.4;
  CHECK(kkt_residual(prob, beta) == doctest::Approx(0.0));
}

TEST_CASE("kkt residual at zero equals the worst violation") {
  std::mt19937 rng(6);
  ColumnProblem prob = random_problem(5, 15, rng, 0.3);
  const Eigen::VectorXd beta = Eigen::VectorXd::Zero(5);
  double expected = 0.0;
  for (int i = 0; i < 5; ++i)
    expected = std::max(expected, std::abs(prob.v[i]) - prob.lambda[i]);
  CHECK(kkt_residual(prob, beta) == doctest::Approx(std::max(expected, 0.0)));
}

TEST_CASE("warm start reaches the cold-start solution") {
  std::mt19937 rng(7);
  const ColumnProblem strong = random_problem(6, 25, rng, 0.6);
  ColumnProblem weak = strong;
  weak.lambda *= 0.3;

  const ActiveSetState at_strong = solve_column(strong);
  const ActiveSetState warm = solve_column(weak, at_strong);
  const ActiveSetState cold = solve_column(weak);
  CHECK((warm.beta - cold.beta).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("objective is nonincreasing across accepted steps") {
  std::mt19937 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const ColumnProblem prob = random_problem(6, 20, rng, 0.4);
    std::vector<double> trace;
    solve_column(prob, {}, 1e-9, -1, &trace);
    for (size_t k = 1; k < trace.size(); ++k)
      CHECK(trace[k] <= trace[k - 1] + 1e-10);
  }
}

TEST_CASE("active set cannot exceed the rank of S") {
  std::mt19937 rng(9);
  const int p = 12, n = 4;
  ColumnProblem prob;
  prob.S = oracles::random_psd(p, n, rng);  // rank n < p
  prob.v = oracles::random_vector(p, rng);
  prob.lambda = Eigen::VectorXd::Constant(p, 1e-8);
  CHECK_THROWS_AS(solve_column(prob), SingularActiveBlock);
}

TEST_CASE("solve_network binds independent column solutions") {
  std::mt19937 rng(10);
  const int p = 5, n = 20;
  EmpiricalMoments m;
  m.p = p;
  m.n = n;
  m.S = oracles::random_psd(p, n, rng);
  m.V = Eigen::MatrixXd::Random(p, p);
  PenaltyMatrix P;
  P.P = Eigen::MatrixXd::Constant(p, p, 0.2);

  const NetworkEstimate est = solve_network(m, P);
  for (int k = 0; k < p; ++k) {
    ColumnProblem prob{m.S, m.V.col(k), P.P.col(k)};
    const ActiveSetState st = solve_column(prob);
    CHECK((est.A_hat.col(k) - st.beta).cwiseAbs().maxCoeff() == 0.0);
  }
  CHECK(est.df == count_nonzeros(est.A_hat));
}

TEST_CASE("solve_network thread count does not change the result") {
  std::mt19937 rng(11);
  const int p = 7, n = 30;
  EmpiricalMoments m;
  m.p = p;
  m.n = n;
  m.S = oracles::random_psd(p, n, rng);
  m.V = Eigen::MatrixXd::Random(p, p);
  PenaltyMatrix P;
  P.P = Eigen::MatrixXd::Constant(p, p, 0.15);

  SolverOptions seq, par;
  par.threads = 4;
  const NetworkEstimate a = solve_network(m, P, nullptr, seq);
  const NetworkEstimate b = solve_network(m, P, nullptr, par);
  CHECK((a.A_hat - b.A_hat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("network null and unpenalized limits") {
  std::mt19937 rng(12);
  const int p = 4, n = 16;
  EmpiricalMoments m;
  m.p = p;
  m.n = n;
  m.S = oracles::random_psd(p, n, rng);
  m.V = Eigen::MatrixXd::Random(p, p);

  PenaltyMatrix heavy;
  heavy.P = Eigen::MatrixXd::Constant(p, p, m.V.cwiseAbs().maxCoeff() + 0.1);
  const NetworkEstimate null_est = solve_network(m, heavy);
  CHECK(null_est.df == 0);

  PenaltyMatrix zero;
  zero.P = Eigen::MatrixXd::Zero(p, p);
  const NetworkEstimate ols_est = solve_network(m, zero);
  CHECK((ols_est.A_hat - mle(m)).cwiseAbs().maxCoeff() < 1e-8);
}
