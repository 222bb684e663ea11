#pragma once

#include <array>

#include <Eigen/Dense>

#include "rdschwarz/dg_space.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Embedding of the DG space on level l-1 into level l and its transpose.
///
/// Residuals are dual vectors and move down with E^T; corrections are primal and
/// move up with E. Both act independently on every group.
class TransferPair {
public:
  TransferPair(const MeshHierarchy& meshes, int fine_level, int degree, int groups);

  int coarse_level() const { return fine_level_ - 1; }
  int fine_level() const { return fine_level_; }

  /// Local embedding for child (cx, cy), index cy*2+cx: rows are child nodes,
  /// columns parent nodes.
  const Eigen::MatrixXd& child_matrix(int child) const { return embed_[static_cast<std::size_t>(child)]; }

  PrimalVector prolongate(const PrimalVector& coarse) const;
  DualVector restrict_residual(const DualVector& fine) const;

private:
  const Mesh* coarse_;
  int fine_level_;
  DgSpace coarse_space_;
  DgSpace fine_space_;
  std::array<Eigen::MatrixXd, 4> embed_;
};

}  // namespace rdschwarz
