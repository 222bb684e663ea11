#pragma once

#include <vector>

#include "rdschwarz/block_operator.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/reaction.hpp"
#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Coefficients of the interior penalty reaction-diffusion system.
struct ProblemParams {
  ReactionModel reaction = ReactionModel::zero(1);
  std::vector<double> diffusion{1.0};  // eta_g, one per group
  double penalty = 2.0;                // delta_IP
  int degree = 1;
  int quadrature_points = 0;  // per direction; 0 selects degree + 2
  /// Rule for the reaction term. 0 selects quadrature_order() for a constant
  /// Sigma and three more points for a space-dependent one, whose sin^2 bumps are
  /// otherwise under-resolved on the coarsest meshes.
  int reaction_quadrature_points = 0;
  /// Multiplies every face term (penalty and consistency) of the bilinear form
  /// below. 0.5 is the usual SIPG weighting (interior penalty delta/h, boundary
  /// penalty 2 delta/h, consistency with the arithmetic mean); 1.0 keeps the
  /// sqrt(2)-average weights literally, which is barely coercive at delta = 2.
  double face_scale = 0.5;

  int groups() const { return reaction.groups(); }
  int quadrature_order() const { return quadrature_points > 0 ? quadrature_points : degree + 2; }
  int reaction_quadrature_order() const;

  /// Throws std::invalid_argument on inconsistent or out-of-range values.
  void validate() const;

  /// Same parameters with every diffusion coefficient 1 and Sigma = 0 for G groups.
  static ProblemParams poisson(int groups = 1);
};

/// Assembles, up to face_scale on the face sums,
///   A(u,v) = sum_K (D grad u, grad v)_K
///          + sum_F 4 delta/h ({{D u n}}, {{v n}})_F
///          - sum_F 2 [({{u n}}, {{D grad v}})_F + ({{D grad u}}, {{v n}})_F]
///          + (Sigma u, v)
/// with {{w}} = (w+ + w-)/sqrt(2) on interior faces and {{w}} = w on the boundary,
/// which imposes homogeneous Dirichlet conditions weakly. h is the cell side.
BlockOperator assemble_operator(const Mesh& mesh, const ProblemParams& params);

/// Entries int_K S_g phi_i dx for a piecewise-constant source per group.
DualVector assemble_rhs(const Mesh& mesh, const ProblemParams& params, const std::vector<double>& source);

}  // namespace rdschwarz
