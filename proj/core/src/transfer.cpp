#include "rdschwarz/transfer.hpp"

#include <stdexcept>

namespace rdschwarz {

namespace {

const Mesh& coarse_mesh(const MeshHierarchy& meshes, int fine_level) {
  if (fine_level < 1 || fine_level > meshes.finest_level())
    throw std::invalid_argument("TransferPair: fine level outside the hierarchy");
  return meshes.level(fine_level - 1);
}

}  // namespace

TransferPair::TransferPair(const MeshHierarchy& meshes, int fine_level, int degree, int groups)
    : coarse_(&coarse_mesh(meshes, fine_level)),
      fine_level_(fine_level),
      coarse_space_(fine_level - 1, degree, groups),
      fine_space_(fine_level, degree, groups) {
  const LagrangeBasis1D basis(degree);
  const int n1 = degree + 1;
  const int nloc = n1 * n1;
  for (int cy = 0; cy < 2; ++cy)
    for (int cx = 0; cx < 2; ++cx) {
      Eigen::MatrixXd& e = embed_[static_cast<std::size_t>(cy * 2 + cx)];
      e.resize(nloc, nloc);
      for (int iy = 0; iy < n1; ++iy)
        for (int ix = 0; ix < n1; ++ix) {
          // child node in parent reference coordinates
          const double px = 0.5 * (cx + basis.nodes()[static_cast<std::size_t>(ix)]);
          const double py = 0.5 * (cy + basis.nodes()[static_cast<std::size_t>(iy)]);
          for (int jy = 0; jy < n1; ++jy)
            for (int jx = 0; jx < n1; ++jx)
              e(ix + n1 * iy, jx + n1 * jy) = basis.value(jx, px) * basis.value(jy, py);
        }
    }
}

PrimalVector TransferPair::prolongate(const PrimalVector& coarse) const {
  if (coarse.size() != coarse_space_.n_dofs())
    throw std::invalid_argument("prolongate: vector does not live on the coarse level");
  const int nloc = fine_space_.nodes_per_cell();
  PrimalVector fine(fine_space_.n_dofs());
  for (std::size_t pc = 0; pc < coarse_->n_cells(); ++pc) {
    const Cell& parent = coarse_->cell(pc);
    for (int k = 0; k < 4; ++k) {
      const auto child = static_cast<std::size_t>(parent.children[static_cast<std::size_t>(k)]);
      const Eigen::MatrixXd& e = embed_[static_cast<std::size_t>(k)];
      for (int g = 0; g < fine_space_.groups(); ++g) {
        Eigen::Map<const Eigen::VectorXd> src(coarse.data() + coarse_space_.dof(pc, g, 0), nloc);
        Eigen::Map<Eigen::VectorXd> dst(fine.data() + fine_space_.dof(child, g, 0), nloc);
        dst.noalias() = e * src;
      }
    }
  }
  return fine;
}

DualVector TransferPair::restrict_residual(const DualVector& fine) const {
  if (fine.size() != fine_space_.n_dofs())
    throw std::invalid_argument("restrict_residual: vector does not live on the fine level");
  const int nloc = fine_space_.nodes_per_cell();
  DualVector coarse(coarse_space_.n_dofs());
  for (std::size_t pc = 0; pc < coarse_->n_cells(); ++pc) {
    const Cell& parent = coarse_->cell(pc);
    for (int k = 0; k < 4; ++k) {
      const auto child = static_cast<std::size_t>(parent.children[static_cast<std::size_t>(k)]);
      const Eigen::MatrixXd& e = embed_[static_cast<std::size_t>(k)];
      for (int g = 0; g < fine_space_.groups(); ++g) {
        Eigen::Map<const Eigen::VectorXd> src(fine.data() + fine_space_.dof(child, g, 0), nloc);
        Eigen::Map<Eigen::VectorXd> dst(coarse.data() + coarse_space_.dof(pc, g, 0), nloc);
        dst.noalias() += e.transpose() * src;
      }
    }
  }
  return coarse;
}

}  // namespace rdschwarz
