#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rdschwarz/oracles/dense_oracles.hpp"
#include "rdschwarz/precond.hpp"

using namespace rdschwarz;

namespace {

Eigen::VectorXd as_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST(TwoLevel, MatchesDenseCompositionOnFirstPair) {
  const ProblemParams p = ProblemParams::poisson(1);
  MultilevelSetup setup(1, p);
  const Eigen::MatrixXd a = oracles::assemble_dense(1, p), a0 = oracles::assemble_dense(0, p);
  const Eigen::MatrixXd e = oracles::prolongation(1, 1);
  const Eigen::MatrixXd bad = oracles::block_jacobi(a, 4);
  const Eigen::MatrixXd bmu = oracles::block_gauss_seidel(a, 4, {0, 1, 2, 3});
  const DualVector r(test::random_values(16, 11));
  const Eigen::VectorXd rv = as_eigen(r.values());
  const std::pair<Method, Eigen::MatrixXd> cases[] = {
      {Method::two_level_additive, oracles::two_level(TwoLevelKind::additive, CoarsePlacement::symmetric, a, a0, e, bad)},
      {Method::two_level_hybrid, oracles::two_level(TwoLevelKind::hybrid, CoarsePlacement::symmetric, a, a0, e, bad)},
      {Method::two_level_multiplicative,
       oracles::two_level(TwoLevelKind::multiplicative, CoarsePlacement::symmetric, a, a0, e, bmu)}};
  for (const auto& [method, m] : cases) {
    const Eigen::VectorXd ref = m * rv;
    EXPECT_LE((as_eigen(setup.make(method)->apply(r).values()) - ref).norm(), 1e-12 * ref.norm()) << to_string(method);
  }
}

TEST(TwoLevel, ExactSmootherGivesOneIteration) {
  const ProblemParams p = ProblemParams::poisson(1);
  MultilevelSetup setup(3, p);
  const TwoLevel hybrid(TwoLevelKind::hybrid, setup.op(3), setup.transfer(3),
                        std::make_shared<DirectPreconditioner>(setup.direct_solver(3)),
                        std::make_shared<DirectPreconditioner>(setup.direct_solver(2)));
  const DualVector b = assemble_rhs(setup.meshes().finest(), p, {1.0});
  const auto res = gmres([&](const PrimalVector& x) { return setup.op(3).apply(x); },
                         [&](const DualVector& r) { return hybrid.apply(r); }, b);
  EXPECT_EQ(res.report.iterations, 1);
}

TEST(TwoLevel, PoissonRowFive) {
  const ProblemParams p = ProblemParams::poisson(1);
  EXPECT_EQ(test::iterations(p, 5, Method::two_level_additive, {1.0}), 24);
  EXPECT_EQ(test::iterations(p, 5, Method::two_level_hybrid, {1.0}), 11);
  EXPECT_EQ(test::iterations(p, 5, Method::two_level_multiplicative, {1.0}), 7);
}

TEST(TwoLevel, PlacementNames) {
  EXPECT_EQ(parse_coarse_placement("coarse-first"), CoarsePlacement::coarse_first);
  EXPECT_EQ(to_string(CoarsePlacement::symmetric), "symmetric");
  EXPECT_THROW(parse_coarse_placement("middle"), std::invalid_argument);
}

TEST(VCycle, CoarsestLevelIsDirectSolve) {
  MultilevelSetup setup(0, test::with_reaction(ReactionKind::two_group, 2, 0.1));
  const DualVector g(test::random_values(8, 12));
  const Eigen::VectorXd z = as_eigen(setup.make(Method::mg_multiplicative)->apply(g).values());
  EXPECT_LE((as_eigen(setup.op(0).apply(PrimalVector(std::vector<double>(z.data(), z.data() + z.size()))).values()) -
             as_eigen(g.values()))
                .norm(),
            1e-12 * as_eigen(g.values()).norm());
}

TEST(VCycle, PoissonRowSix) {
  const ProblemParams p = ProblemParams::poisson(1);
  EXPECT_EQ(test::iterations(p, 6, Method::mg_additive, {1.0}), 13);
  EXPECT_EQ(test::iterations(p, 6, Method::mg_multiplicative, {1.0}), 8);
}

TEST(VCycle, ErrorPropagationContracts) {
  MultilevelSetup setup(3, ProblemParams::poisson(1));
  const auto mg = setup.make(Method::mg_multiplicative);
  const Eigen::MatrixXd a = setup.op(3).to_dense();
  Eigen::MatrixXd m(a.rows(), a.cols());
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    DualVector e(static_cast<std::size_t>(a.rows()));
    e[static_cast<std::size_t>(j)] = 1.0;
    m.col(j) = as_eigen(mg->apply(e).values());
  }
  const Eigen::MatrixXd err = Eigen::MatrixXd::Identity(a.rows(), a.cols()) - m * a;
  EXPECT_LT(Eigen::EigenSolver<Eigen::MatrixXd>(err, false).eigenvalues().cwiseAbs().maxCoeff(), 1.0);
}

TEST(VCycle, RejectsBadSmoothingSteps) {
  MultilevelSetup setup(2, ProblemParams::poisson(1));
  PreconditionerOptions o;
  o.smoothing_steps = 0;
  EXPECT_THROW(setup.make(Method::mg_additive, o), std::invalid_argument);
}

TEST(Methods, Names) {
  for (Method m : {Method::none, Method::two_level_additive, Method::two_level_hybrid, Method::two_level_multiplicative,
                   Method::mg_additive, Method::mg_multiplicative})
    EXPECT_EQ(parse_method(to_string(m)), m);
  EXPECT_THROW(parse_method("ILU"), std::invalid_argument);
}

TEST(Gmres, IdentityOneIteration) {
  const DualVector b(test::random_values(20, 13));
  const auto res = gmres([](const PrimalVector& x) { return DualVector(x.values()); },
                         [](const DualVector& r) { return PrimalVector(r.values()); }, b);
  EXPECT_EQ(res.report.iterations, 1);
  EXPECT_TRUE(res.report.converged);
}

TEST(Gmres, ExactInverseOneIteration) {
  const auto vals = test::random_values(2500, 14);
  const Eigen::MatrixXd g = Eigen::Map<const Eigen::MatrixXd>(vals.data(), 50, 50);
  const Eigen::MatrixXd a = g * g.transpose() + 50.0 * Eigen::MatrixXd::Identity(50, 50);
  const Eigen::MatrixXd inv = a.inverse();
  auto mul = [](const Eigen::MatrixXd& m, const std::vector<double>& v) {
    const Eigen::VectorXd y = m * as_eigen(v);
    return std::vector<double>(y.data(), y.data() + y.size());
  };
  const auto res = gmres([&](const PrimalVector& x) { return DualVector(mul(a, x.values())); },
                         [&](const DualVector& r) { return PrimalVector(mul(inv, r.values())); },
                         DualVector(test::random_values(50, 15)));
  EXPECT_EQ(res.report.iterations, 1);
}

TEST(Gmres, UnpreconditionedPoissonRowFour) {
  EXPECT_EQ(test::iterations(ProblemParams::poisson(1), 4, Method::none, {1.0}), 22);
}

TEST(Gmres, NonConvergenceIsReported) {
  const ProblemParams p = ProblemParams::poisson(1);
  MultilevelSetup setup(5, p);
  SolveConfig cfg;
  cfg.max_iterations = 5;
  const auto res = gmres([&](const PrimalVector& x) { return setup.op(5).apply(x); },
                         [](const DualVector& r) { return PrimalVector(r.values()); },
                         assemble_rhs(setup.meshes().finest(), p, {1.0}), cfg);
  EXPECT_FALSE(res.report.converged);
  EXPECT_EQ(res.report.iterations, 5);
  EXPECT_EQ(res.report.residual_history.size(), 6u);
}

TEST(Gmres, LeftPreconditioningStaysInBand) {
  const ProblemParams p = ProblemParams::poisson(1);
  MultilevelSetup setup(4, p);
  const auto pc = setup.make(Method::mg_multiplicative);
  const DualVector b = assemble_rhs(setup.meshes().finest(), p, {1.0});
  SolveConfig left;
  left.side = PreconditionSide::left;
  const auto res = gmres([&](const PrimalVector& x) { return setup.op(4).apply(x); },
                         [&](const DualVector& r) { return pc->apply(r); }, b, left);
  EXPECT_TRUE(res.report.converged);
  EXPECT_LE(std::abs(res.report.iterations - 8), 2);
}

TEST(Gmres, ConfigValidation) {
  SolveConfig c;
  c.tolerance = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = {};
  c.max_iterations = 0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
}
