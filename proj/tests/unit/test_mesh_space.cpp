#include <cmath>

#include <gtest/gtest.h>

#include "rdschwarz/dg_space.hpp"
#include "rdschwarz/mesh.hpp"

using namespace rdschwarz;

TEST(Mesh, SingleCell) {
  const Mesh m(0);
  EXPECT_EQ(m.n_cells(), 1u);
  EXPECT_EQ(m.interior_faces().size(), 0u);
  EXPECT_EQ(m.boundary_faces().size(), 4u);
}

TEST(Mesh, FaceCountsMatchEnumeration) {
  const Mesh m(3);
  EXPECT_EQ(m.n_cells(), 64u);
  EXPECT_EQ(m.interior_faces().size(), 112u);
  EXPECT_EQ(m.boundary_faces().size(), 32u);
  // every cell side is either an interior face or on the boundary
  std::size_t interior_sides = 0, boundary_sides = 0;
  for (std::size_t c = 0; c < m.n_cells(); ++c)
    for (Side s : {Side::west, Side::east, Side::south, Side::north})
      (m.neighbor(c, s) < 0 ? boundary_sides : interior_sides)++;
  EXPECT_EQ(interior_sides, 2 * m.interior_faces().size());
  EXPECT_EQ(boundary_sides, m.boundary_faces().size());
}

TEST(Mesh, CellSide) { EXPECT_DOUBLE_EQ(Mesh(5).cell_size(), 0.03125); }

TEST(Mesh, HierarchyRejectsOutOfRange) {
  EXPECT_THROW(MeshHierarchy(-1), std::invalid_argument);
  EXPECT_THROW(MeshHierarchy(MeshHierarchy::max_supported_level + 1), std::invalid_argument);
}

TEST(Mesh, ChildrenTileParent) {
  const MeshHierarchy h(3);
  const Mesh& coarse = h.level(2);
  const Mesh& fine = h.level(3);
  for (std::size_t p = 0; p < coarse.n_cells(); ++p)
    for (int k = 0; k < 4; ++k) {
      const Cell& child = fine.cell(static_cast<std::size_t>(coarse.cell(p).children[static_cast<std::size_t>(k)]));
      EXPECT_EQ(child.parent, static_cast<int>(p));
      EXPECT_DOUBLE_EQ(child.x0, coarse.cell(p).x0 + (k % 2) * fine.cell_size());
      EXPECT_DOUBLE_EQ(child.y0, coarse.cell(p).y0 + (k / 2) * fine.cell_size());
    }
}

TEST(Basis, NodalAtOrigin) {
  const BasisValues b = eval_basis(1, {0.0, 0.0});
  EXPECT_EQ(b.values, (std::vector<double>{1.0, 0.0, 0.0, 0.0}));
}

TEST(Basis, PartitionOfUnity) {
  for (double x : {0.0, 0.13, 0.5, 0.91})
    for (double y : {0.2, 0.77, 1.0}) {
      double s = 0.0;
      for (double v : eval_basis(1, {x, y}).values) s += v;
      EXPECT_NEAR(s, 1.0, 1e-15);
    }
}

TEST(Basis, GradientsMatchFiniteDifferences) {
  const Point2 p{0.3, 0.7};
  const double h = 1e-6;
  const BasisValues b = eval_basis(1, p);
  const BasisValues xp = eval_basis(1, {p[0] + h, p[1]}), xm = eval_basis(1, {p[0] - h, p[1]});
  const BasisValues yp = eval_basis(1, {p[0], p[1] + h}), ym = eval_basis(1, {p[0], p[1] - h});
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(b.gradients[i][0], (xp.values[i] - xm.values[i]) / (2 * h), 1e-8);
    EXPECT_NEAR(b.gradients[i][1], (yp.values[i] - ym.values[i]) / (2 * h), 1e-8);
  }
}

TEST(Basis, RejectsPointsOutsideReferenceCell) {
  EXPECT_THROW(eval_basis(1, {1.5, 0.5}), std::invalid_argument);
}

TEST(Quadrature, TwoPointRule) {
  const QuadratureRule q = make_quadrature(2);
  ASSERT_EQ(q.size(), 4u);
  double cubic = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_NEAR(q.weights[k], 0.25, 4e-16);
    cubic += q.weights[k] * std::pow(q.points[k][0], 3);
  }
  EXPECT_NEAR(cubic, 0.25, 4e-16);
}

TEST(Quadrature, ThreePointSeparable) {
  const QuadratureRule q = make_quadrature(3);
  double s = 0.0;
  for (std::size_t k = 0; k < q.size(); ++k) s += q.weights[k] * std::pow(q.points[k][0], 4) * q.points[k][1] * q.points[k][1];
  EXPECT_NEAR(s, 1.0 / 15.0, 1e-15);
}

TEST(DgSpace, Layout) {
  const DgSpace s(2, 1, 5);
  EXPECT_EQ(s.n_cells(), 16u);
  EXPECT_EQ(s.dofs_per_cell(), 20);
  EXPECT_EQ(s.n_dofs(), 320u);
  EXPECT_EQ(s.dof(1, 2, 3), 20u + 8u + 3u);
}
