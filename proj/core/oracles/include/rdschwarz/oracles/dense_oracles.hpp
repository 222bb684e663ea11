#pragma once

// Brute-force dense reference implementations. They share only plain parameter
// structs with the library and are meant for small meshes (a few hundred dofs).

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/precond.hpp"

namespace rdschwarz::oracles {

/// Gauss-Legendre nodes and weights on [0,1] from the Golub-Welsch eigenproblem.
struct LineRule {
  std::vector<double> x, w;
};
LineRule golub_welsch(int n);

/// Global index of (cell, group, node) for bilinear elements: cells row-major,
/// then groups, then the four nodes (0,0),(1,0),(0,1),(1,1).
std::size_t q1_dof(std::size_t cell, int group, int node, int groups);

/// Value and gradient of every bilinear global shape function of `cell` at a
/// physical point of that cell.
struct ShapeAt {
  double value[4];
  double grad[4][2];
};
ShapeAt q1_shape(int mesh_level, std::size_t cell, double x, double y);

/// Dense operator for p = 1, assembled point by point in physical coordinates
/// from the vector-valued jump/average definitions:
///   sum_K (eta grad u, grad v)
///   + s sum_F [ 4 delta/h {{u n}}.{{v n}} - 2 ({{u n}}.{{grad v}} + {{grad u}}.{{v n}}) ] eta
///   + (Sigma u, v)
/// with {{w}} = (w+ + w-)/sqrt(2) on interior faces, {{w}} = w on the boundary and
/// s = params.face_scale. Volume integrals use params.quadrature_order() points,
/// the reaction term params.reaction_quadrature_order().
Eigen::MatrixXd assemble_dense(int mesh_level, const ProblemParams& params);

/// Dense L2 mass matrix for p = 1.
Eigen::MatrixXd mass_matrix(int mesh_level, int groups);

/// Embedding of level fine_level-1 into fine_level (p = 1) from evaluating the
/// coarse shape functions at fine nodes.
Eigen::MatrixXd prolongation(int fine_level, int groups);

/// Coarse dual representation of the L2 projection of the fine function whose
/// dual coefficients are r_fine: the fine primal M_f^{-1} r is integrated against
/// every coarse shape function by quadrature on the fine cells.
Eigen::VectorXd l2_projected_residual(int fine_level, int groups, const Eigen::VectorXd& r_fine);

/// Block Jacobi inverse over consecutive blocks of size bs, optionally damped.
Eigen::MatrixXd block_jacobi(const Eigen::MatrixXd& a, int bs, double damping = 1.0);

/// (I - prod_i (I - P_i)) A^{-1} with P_i = R_i^T A_i^{-1} R_i A and the product
/// taken in `order` (first entry applied first).
Eigen::MatrixXd block_gauss_seidel(const Eigen::MatrixXd& a, int bs, const std::vector<std::size_t>& order);

/// Two-level preconditioner matrix for fine A, coarse A0, embedding E and
/// smoother matrix B, formed from the error propagation operators.
Eigen::MatrixXd two_level(TwoLevelKind kind, CoarsePlacement placement, const Eigen::MatrixXd& a,
                          const Eigen::MatrixXd& a0, const Eigen::MatrixXd& e, const Eigen::MatrixXd& b);

/// V-cycle matrix M_L: M_0 = A_0^{-1},
///   I - M_l A_l = S^m (I - E M_{l-1} E^T A_l) S^m,  S = I - B_l A_l.
/// e[l] embeds level l-1 into l (e[0] unused), b[0] unused.
Eigen::MatrixXd vcycle(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& e,
                       const std::vector<Eigen::MatrixXd>& b, int m);

}  // namespace rdschwarz::oracles
