#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dynnet/penalty.hpp"

using namespace dynnet;

namespace {

NodeClassification make_classes(std::initializer_list<NodeLabel> labels) {
  NodeClassification z;
  z.labels = labels;
  z.source = ClassificationSource::Known;
  return z;
}

}  // namespace

TEST_CASE("lasso penalty is flat") {
  PenaltySpec spec;
  spec.rho = 0.3;
  const PenaltyMatrix P = build_penalty(spec, 4);
  CHECK((P.P.array() == 0.3).all());
}

TEST_CASE("known classes, normalization off, ratio 2") {
  PenaltySpec spec;
  spec.regime = PenaltyRegime::KnownClasses;
  spec.classes = make_classes({NodeLabel::Hub, NodeLabel::Leaf, NodeLabel::Leaf});
  spec.rho = 0.1;
  spec.ratio = 2.0;
  spec.normalize = false;
  const PenaltyMatrix P = build_penalty(spec, 3);
  for (int j = 0; j < 3; ++j) {
    CHECK(P.P(0, j) == doctest::Approx(0.1));       // hub row
    CHECK(P.P(1, j) == doctest::Approx(0.2));       // leaf rows, twice as much
    CHECK(P.P(2, j) == doctest::Approx(2.0 * P.P(0, j)));
  }
}

TEST_CASE("known classes normalization keeps mean row weight at 1") {
  PenaltySpec spec;
  spec.regime = PenaltyRegime::KnownClasses;
  spec.classes = make_classes(
      {NodeLabel::Hub, NodeLabel::Leaf, NodeLabel::Leaf, NodeLabel::Leaf});
  spec.rho = 1.0;
  const PenaltyMatrix P = build_penalty(spec, 4);
  CHECK(P.P.col(0).mean() == doctest::Approx(1.0));
  CHECK(P.P(1, 0) / P.P(0, 0) == doctest::Approx(2.0));
}

TEST_CASE("hub rows strictly lighter than leaf rows") {
  PenaltySpec spec;
  spec.regime = PenaltyRegime::KnownClasses;
  spec.classes = make_classes({NodeLabel::Hub, NodeLabel::Leaf});
  spec.rho = 0.7;
  spec.ratio = 3.0;
  const PenaltyMatrix P = build_penalty(spec, 2);
  for (int j = 0; j < 2; ++j) CHECK(P.P(0, j) < P.P(1, j));
}

TEST_CASE("adaptive weights follow (1/|init| v 1) with exclusion at zero") {
  Eigen::MatrixXd init(2, 2);
  init << 0.5, 4.0, 0.0, -0.25;
  PenaltySpec spec;
  spec.regime = PenaltyRegime::Adaptive;
  spec.init = init;
  spec.rho = 1.0;
  const PenaltyMatrix P = build_penalty(spec, 2);
  CHECK(P.P(0, 0) == doctest::Approx(2.0));
  CHECK(P.P(0, 1) == doctest::Approx(1.0));  // 1/4 capped at 1
  CHECK(std::isinf(P.P(1, 0)));
  CHECK(P.P(1, 1) == doctest::Approx(4.0));
}

TEST_CASE("penalty scales linearly with rho") {
  Eigen::MatrixXd init = Eigen::MatrixXd::Constant(3, 3, 0.5);
  init(2, 2) = 0.0;
  for (auto regime : {PenaltyRegime::Lasso, PenaltyRegime::Adaptive}) {
    PenaltySpec spec;
    spec.regime = regime;
    spec.init = init;
    spec.rho = 0.2;
    const PenaltyMatrix base = build_penalty(spec, 3);
    spec.rho = 0.6;
    const PenaltyMatrix scaled = build_penalty(spec, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        if (std::isinf(base.P(i, j))) {
          CHECK(std::isinf(scaled.P(i, j)));
        } else {
          CHECK(scaled.P(i, j) == doctest::Approx(3.0 * base.P(i, j)));
        }
      }
  }
}

TEST_CASE("penalty spec validation") {
  PenaltySpec spec;
  spec.rho = 0.0;
  CHECK_THROWS_AS(build_penalty(spec, 2), NonPositiveRho);
  spec.rho = 1.0;
  spec.regime = PenaltyRegime::Adaptive;
  CHECK_THROWS_AS(build_penalty(spec, 2), MissingInit);
  spec.regime = PenaltyRegime::KnownClasses;
  CHECK_THROWS_AS(build_penalty(spec, 2), MissingClassification);
}

TEST_CASE("row l1 norms") {
  CHECK(row_l1_norms(Eigen::MatrixXd::Zero(3, 3)).cwiseAbs().maxCoeff() == 0.0);
  CHECK((row_l1_norms(Eigen::MatrixXd::Identity(3, 3)).array() == 1.0).all());
  Eigen::MatrixXd A(2, 2);
  A << 1, -2, 0, 3;
  const Eigen::VectorXd norms = row_l1_norms(A);
  CHECK(norms[0] == doctest::Approx(3.0));
  CHECK(norms[1] == doctest::Approx(3.0));
}

TEST_CASE("gmm separates two clear clusters") {
  Eigen::VectorXd values(5);
  values << 10.1, 9.8, 0.1, 0.2, 0.15;
  const GmmFit fit = fit_gmm_1d(values);
  CHECK(fit.labels[0] == fit.labels[1]);
  CHECK(fit.labels[2] == fit.labels[3]);
  CHECK(fit.labels[3] == fit.labels[4]);
  CHECK(fit.labels[0] != fit.labels[2]);
}

TEST_CASE("gmm survives a zero-variance cluster via the floor") {
  Eigen::VectorXd values(4);
  values << 5.0, 5.0, 0.1, 0.2;
  const GmmFit fit = fit_gmm_1d(values);
  CHECK(fit.labels[0] == fit.labels[1]);
  CHECK(fit.labels[2] == fit.labels[3]);
  CHECK(fit.labels[0] != fit.labels[2]);
  CHECK(fit.params.var[0] > 0.0);
  CHECK(fit.params.var[1] > 0.0);
}

TEST_CASE("gmm rejects constant input") {
  CHECK_THROWS_AS(fit_gmm_1d(Eigen::VectorXd::Constant(5, 2.0)),
                  DegenerateInput);
}

TEST_CASE("gmm labels invariant under positive affine transforms") {
  Eigen::VectorXd values(6);
  values << 8.0, 7.5, 9.1, 0.3, 0.1, 0.6;
  const GmmFit base = fit_gmm_1d(values);
  const GmmFit moved = fit_gmm_1d((3.0 * values.array() + 11.0).matrix());
  // component indexing may swap; compare the partition
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      CHECK((base.labels[i] == base.labels[j]) ==
            (moved.labels[i] == moved.labels[j]));
}

TEST_CASE("gmm is deterministic") {
  Eigen::VectorXd values(6);
  values << 4.2, 3.9, 4.4, 0.5, 0.2, 0.7;
  const GmmFit a = fit_gmm_1d(values, 1);
  const GmmFit b = fit_gmm_1d(values, 1);
  CHECK(a.labels == b.labels);
  CHECK(a.params.mean[0] == b.params.mean[0]);
}

TEST_CASE("infer_classes finds the heavy rows") {
  const int p = 8;
  Eigen::MatrixXd A0 = Eigen::MatrixXd::Zero(p, p);
  for (int j = 0; j < p; ++j) {
    A0(0, j) = 0.8;
    A0(3, j) = -0.7;
  }
  A0(5, 2) = 0.01;  // noise row
  const NodeClassification z = infer_classes(A0);
  CHECK(z.source == ClassificationSource::Inferred);
  CHECK_FALSE(z.degenerate);
  CHECK(z.labels[0] == NodeLabel::Hub);
  CHECK(z.labels[3] == NodeLabel::Hub);
  CHECK(z.hubs() == 2);
}

TEST_CASE("degenerate initial estimates fall back to all-leaf") {
  const NodeClassification from_zero = infer_classes(Eigen::MatrixXd::Zero(4, 4));
  CHECK(from_zero.degenerate);
  CHECK(from_zero.hubs() == 0);

  const NodeClassification from_identity =
      infer_classes(Eigen::MatrixXd::Identity(4, 4));
  CHECK(from_identity.degenerate);
  CHECK(from_identity.hubs() == 0);
}

TEST_CASE("inferred-classes regime builds from the init estimate") {
  const int p = 6;
  Eigen::MatrixXd init = Eigen::MatrixXd::Zero(p, p);
  init.row(1).setConstant(0.9);
  PenaltySpec spec;
  spec.regime = PenaltyRegime::InferredClasses;
  spec.init = init;
  spec.rho = 1.0;
  const PenaltyMatrix P = build_penalty(spec, p);
  for (int j = 0; j < p; ++j) {
    CHECK(P.P(1, j) < P.P(0, j));  // inferred hub row is lighter
    CHECK(P.P(0, j) == doctest::Approx(2.0 * P.P(1, j)));
  }
}
