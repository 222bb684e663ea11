#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "rdschwarz/reaction.hpp"

using namespace rdschwarz;

TEST(Reaction, TwoGroupUnitEpsilon) {
  Eigen::Matrix2d expected;
  expected << 1, -1, -1, 1;
  EXPECT_EQ(ReactionModel::two_group(1.0).at(0.4, 0.6), Eigen::MatrixXd(expected));
}

TEST(Reaction, TwoGroupKernel) {
  for (double eps : {1.0, 1e-2, 1e-4})
    EXPECT_NEAR((ReactionModel::two_group(eps).at(0.1, 0.1) * Eigen::Vector2d(1, 1)).norm(), 0.0, 0.0);
}

TEST(Reaction, TwoGroupEigenvalues) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(ReactionModel::two_group(1e-2).at(0.5, 0.5));
  EXPECT_NEAR(eig.eigenvalues()(0), 0.0, 1e-12);
  EXPECT_NEAR(eig.eigenvalues()(1), 200.0, 1e-12);
}

TEST(Reaction, ContrastUnitEpsilon) {
  const Eigen::MatrixXd s = ReactionModel::contrast(5, 1.0).at(0.0, 0.0);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) EXPECT_EQ(s(i, j), i == j ? 4.0 : -1.0);
}

TEST(Reaction, ContrastDiagonal) { EXPECT_NEAR(ReactionModel::contrast(5, 0.1).at(0.3, 0.3)(0, 0), 1111.0, 1e-9); }

TEST(Reaction, ContrastStructure) {
  for (double eps : {1.0, 0.1, 0.01}) {
    const Eigen::MatrixXd s = ReactionModel::contrast(5, eps).at(0.5, 0.5);
    EXPECT_EQ((s - s.transpose()).norm(), 0.0);
    EXPECT_LE(s.colwise().sum().cwiseAbs().maxCoeff(), 1e-12 * s.cwiseAbs().maxCoeff());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
    EXPECT_GE(eig.eigenvalues().minCoeff(), -1e-10 * s.cwiseAbs().maxCoeff());
  }
}

TEST(Reaction, SpatialInsideFirstQuadrant) {
  const Eigen::MatrixXd s = ReactionModel::spatial_contrast(5, 0.1).at(0.25, 0.25);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      if (i == 1 || j == 1) EXPECT_NEAR(s(i, j), -1.0, 1e-14);
      else EXPECT_EQ(s(i, j), 0.0);
    }
}

TEST(Reaction, SpatialVanishesOnBumpZero) {
  EXPECT_LT(ReactionModel::spatial_contrast(5, 0.1).at(0.5, 0.37).cwiseAbs().maxCoeff(), 1e-20);
}

TEST(Reaction, SpatialSymmetricZeroColumnSums) {
  const ReactionModel m = ReactionModel::spatial_contrast(5, 0.01);
  for (double x : {0.1, 0.3, 0.6, 0.8})
    for (double y : {0.15, 0.45, 0.7, 0.95}) {
      const Eigen::MatrixXd s = m.at(x, y);
      EXPECT_EQ((s - s.transpose()).norm(), 0.0);
      EXPECT_LE(s.colwise().sum().cwiseAbs().maxCoeff(), 1e-12 * std::max(1.0, s.cwiseAbs().maxCoeff()));
    }
}

TEST(Reaction, Validation) {
  EXPECT_THROW(ReactionModel::two_group(0.0), std::invalid_argument);
  EXPECT_THROW(ReactionModel::contrast(6, 0.1), std::invalid_argument);
  EXPECT_THROW(parse_reaction_kind("diagonal"), std::invalid_argument);
  EXPECT_EQ(parse_reaction_kind("spatial_contrast"), ReactionKind::spatial_contrast);
}
