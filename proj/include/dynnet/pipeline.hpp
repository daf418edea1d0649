#ifndef DYNNET_PIPELINE_HPP
#define DYNNET_PIPELINE_HPP

#include "dynnet/selection.hpp"

namespace dynnet {

// One full inference run: optional initial Lasso (Adaptive/InferredClasses),
// penalty construction, warm-started path, criterion selection.
struct PipelineConfig {
  PenaltyRegime regime = PenaltyRegime::Lasso;
  Criterion criterion = Criterion::BIC;
  Criterion init_criterion = Criterion::BIC;  // for the initial Lasso fit
  double ratio = 2.0;
  int grid_size = 50;
  int seed = 0;
  std::optional<NodeClassification> known_classes;
  SolverOptions solver;
};

struct PipelineResult {
  PenaltyPath path;
  NetworkEstimate best;
  std::optional<NodeClassification> classes_used;
  bool null_init = false;  // initial Lasso selected the null model
};

PipelineResult run_inference(const EmpiricalMoments& m,
                             const PipelineConfig& cfg);

}  // namespace dynnet

#endif  // DYNNET_PIPELINE_HPP
