#include <gtest/gtest.h>

#include "helpers.hpp"
#include "rdschwarz/direct_solver.hpp"
#include "rdschwarz/oracles/dense_oracles.hpp"
#include "rdschwarz/schwarz.hpp"
#include "rdschwarz/transfer.hpp"

using namespace rdschwarz;

namespace {

Eigen::VectorXd as_eigen(const std::vector<double>& v) {
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

TEST(Schwarz, BlockDiagonalInverse) {
  const BlockOperator diag = assemble_operator(Mesh(3), test::with_reaction(ReactionKind::two_group, 2, 0.01)).block_diagonal();
  const CellBlockSolver cells(diag);
  const DualVector r(test::random_values(diag.n_dofs(), 1));
  const PrimalVector z = cells.apply_additive(r);
  EXPECT_LE(norm2((diag.apply(z) - r).span()), 1e-12 * norm2(r.span()));
  const PrimalVector zm = cells.apply_multiplicative(r);
  EXPECT_EQ(as_eigen(zm.values()), as_eigen(z.values()));
}

TEST(Schwarz, SingleCellIsDirectSolve) {
  const BlockOperator a = assemble_operator(Mesh(0), ProblemParams::poisson(1));
  const DualVector r(test::random_values(4, 2));
  EXPECT_LE((as_eigen(CellBlockSolver(a).apply_additive(r).values()) - as_eigen(DirectSolver(a).solve(r).values())).norm(),
            1e-12);
}

TEST(Schwarz, BlockJacobiIsSymmetric) {
  const BlockOperator a = assemble_operator(Mesh(2), ProblemParams::poisson(1));
  const CellBlockSolver cells(a);
  const DualVector r1(test::random_values(a.n_dofs(), 3)), r2(test::random_values(a.n_dofs(), 4));
  const double lhs = dot(cells.apply_additive(r1).span(), r2.span());
  const double rhs = dot(r1.span(), cells.apply_additive(r2).span());
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs));
  const Eigen::MatrixXd b = oracles::block_jacobi(a.to_dense(), a.block_size());
  EXPECT_LE((as_eigen(cells.apply_additive(r1).values()) - b * as_eigen(r1.values())).norm(), 1e-12 * (b * as_eigen(r1.values())).norm());
}

TEST(Schwarz, GaussSeidelMatchesProductOracle) {
  const BlockOperator a = assemble_operator(Mesh(1), ProblemParams::poisson(1));
  const CellBlockSolver cells(a);
  const Eigen::MatrixXd b = oracles::block_gauss_seidel(a.to_dense(), a.block_size(), cells.traversal());
  const DualVector r(test::random_values(a.n_dofs(), 5));
  const Eigen::VectorXd ref = b * as_eigen(r.values());
  EXPECT_LE((as_eigen(cells.apply_multiplicative(r).values()) - ref).norm(), 1e-12 * ref.norm());
}

TEST(Schwarz, ReverseOrderDiffersButCountsStayClose) {
  const ProblemParams p = ProblemParams::poisson(1);
  const BlockOperator a = assemble_operator(Mesh(3), p);
  const DualVector r(test::random_values(a.n_dofs(), 6));
  const Eigen::VectorXd fwd = as_eigen(CellBlockSolver(a).apply_multiplicative(r).values());
  const Eigen::VectorXd bwd = as_eigen(CellBlockSolver(a, 1.0, CellOrder::reverse).apply_multiplicative(r).values());
  EXPECT_GT((fwd - bwd).norm(), 1e-6 * fwd.norm());

  PreconditionerOptions reverse;
  reverse.order = CellOrder::reverse;
  const int n_fwd = test::iterations(p, 4, Method::two_level_multiplicative, {1.0});
  const int n_bwd = test::iterations(p, 4, Method::two_level_multiplicative, {1.0}, reverse);
  EXPECT_LE(std::abs(n_fwd - n_bwd), 2);
}

TEST(Schwarz, RedBlackColoursDoNotCouple) {
  const CellBlockSolver cells(assemble_operator(Mesh(2), ProblemParams::poisson(1)), 1.0, CellOrder::red_black);
  const auto order = cells.traversal();
  const Mesh m(2);
  ASSERT_EQ(order.size(), 16u);
  for (std::size_t k = 0; k < 8; ++k) EXPECT_EQ((m.cell(order[k]).i + m.cell(order[k]).j) % 2, 0);
  for (std::size_t k = 8; k < 16; ++k) EXPECT_EQ((m.cell(order[k]).i + m.cell(order[k]).j) % 2, 1);
  EXPECT_EQ(parse_cell_order("red-black"), CellOrder::red_black);
  EXPECT_THROW(parse_cell_order("random"), std::invalid_argument);
}

TEST(Transfer, ConstantsAreNested) {
  const MeshHierarchy h(3);
  const TransferPair t(h, 3, 1, 2);
  const PrimalVector fine = t.prolongate(PrimalVector(DgSpace(2, 1, 2).n_dofs(), 1.0));
  for (std::size_t i = 0; i < fine.size(); ++i) EXPECT_NEAR(fine[i], 1.0, 1e-15);
}

TEST(Transfer, BilinearReproducedOnChildren) {
  // x*y on the single level-0 cell has nodal values (0,0,0,1)
  const MeshHierarchy h(1);
  const TransferPair t(h, 1, 1, 1);
  const PrimalVector fine = t.prolongate(PrimalVector(std::vector<double>{0.0, 0.0, 0.0, 1.0}));
  for (double x : {0.1, 0.37, 0.62, 0.93})
    for (double y : {0.05, 0.49, 0.51, 0.8}) {
      const std::size_t c = static_cast<std::size_t>(Mesh(1).index(x < 0.5 ? 0 : 1, y < 0.5 ? 0 : 1));
      const oracles::ShapeAt s = oracles::q1_shape(1, c, x, y);
      double v = 0.0;
      for (int k = 0; k < 4; ++k) v += fine[c * 4 + static_cast<std::size_t>(k)] * s.value[k];
      EXPECT_NEAR(v, x * y, 1e-15);
    }
}

TEST(Transfer, NormMatchesDenseSvd) {
  const MeshHierarchy h(2);
  const TransferPair t(h, 2, 1, 1);
  Eigen::MatrixXd e(64, 16);
  for (int j = 0; j < 16; ++j) {
    PrimalVector v(16);
    v[static_cast<std::size_t>(j)] = 1.0;
    e.col(j) = as_eigen(t.prolongate(v).values());
  }
  const double got = Eigen::JacobiSVD<Eigen::MatrixXd>(e).singularValues()(0);
  const double ref = Eigen::JacobiSVD<Eigen::MatrixXd>(oracles::prolongation(2, 1)).singularValues()(0);
  EXPECT_NEAR(got, ref, 1e-13 * ref);
}

TEST(Transfer, RestrictionOfCoarseProblemResidualIsL2Projection) {
  const MeshHierarchy h(2);
  const TransferPair t(h, 2, 1, 1);
  const ProblemParams p = ProblemParams::poisson(1);
  const PrimalVector vc(test::random_values(16, 8));
  const DualVector r = assemble_operator(h.level(2), p).apply(t.prolongate(vc)) - assemble_rhs(h.level(2), p, {1.0});
  const Eigen::VectorXd ref = oracles::l2_projected_residual(2, 1, as_eigen(r.values()));
  EXPECT_LE((as_eigen(t.restrict_residual(r).values()) - ref).norm(), 1e-12 * ref.norm());
}

TEST(Transfer, ZeroAndAdjoint) {
  const MeshHierarchy h(3);
  const TransferPair t(h, 3, 1, 2);
  EXPECT_EQ(norm2(t.restrict_residual(DualVector(DgSpace(3, 1, 2).n_dofs())).span()), 0.0);
  for (unsigned k = 0; k < 100; ++k) {
    const PrimalVector v(test::random_values(DgSpace(2, 1, 2).n_dofs(), 100 + k));
    const DualVector r(test::random_values(DgSpace(3, 1, 2).n_dofs(), 300 + k));
    const PrimalVector ev = t.prolongate(v);
    EXPECT_NEAR(pairing(t.restrict_residual(r), v), pairing(r, ev), 1e-13 * norm2(r.span()) * norm2(ev.span()));
  }
}
