#include "dynnet/pipeline.hpp"

namespace dynnet {

namespace {

NetworkEstimate null_estimate(int p) {
  NetworkEstimate est;
  est.A_hat = Eigen::MatrixXd::Zero(p, p);
  est.rho = 0.0;
  return est;
}

PenaltyPath run_path(const EmpiricalMoments& m, const PenaltySpec& spec,
                     int grid_size, const SolverOptions& solver) {
  PenaltySpec unit = spec;
  unit.rho = 1.0;
  const double rmax = rho_max(m, build_penalty(unit, m.p));
  return solve_path(m, spec, make_grid(rmax, grid_size), solver);
}

}  // namespace

PipelineResult run_inference(const EmpiricalMoments& m,
                             const PipelineConfig& cfg) {
  PipelineResult res;

  PenaltySpec spec;
  spec.regime = cfg.regime;
  spec.ratio = cfg.ratio;
  spec.seed = cfg.seed;

  if (cfg.regime == PenaltyRegime::Adaptive ||
      cfg.regime == PenaltyRegime::InferredClasses) {
    PenaltySpec init_spec;
    init_spec.regime = PenaltyRegime::Lasso;
    const PenaltyPath init_path =
        run_path(m, init_spec, cfg.grid_size, cfg.solver);
    const NetworkEstimate& init = select_best(init_path, cfg.init_criterion);
    spec.init = init.A_hat;
    res.null_init = init.df == 0;
  } else if (cfg.regime == PenaltyRegime::KnownClasses) {
    if (!cfg.known_classes) throw MissingClassification();
    spec.classes = cfg.known_classes;
    res.classes_used = cfg.known_classes;
  }

  if (cfg.regime == PenaltyRegime::Adaptive && res.null_init) {
    // Everything excluded by the initial Lasso: the null model is the only
    // candidate, rho_max is undefined.
    res.path.estimates.push_back(null_estimate(m.p));
    res.path.grid.push_back(0.0);
    res.best = res.path.estimates.front();
    return res;
  }

  if (cfg.regime == PenaltyRegime::InferredClasses)
    res.classes_used = infer_classes(*spec.init, cfg.seed);

  res.path = run_path(m, spec, cfg.grid_size, cfg.solver);
  res.best = select_best(res.path, cfg.criterion);
  return res;
}

}  // namespace dynnet
