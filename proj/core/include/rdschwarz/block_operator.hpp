#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rdschwarz/dg_space.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Assembled DG operator in cell-block sparse form.
///
/// Each cell owns a dense diagonal block of size G*(p+1)^2 (diffusion, face
/// self-coupling and reaction). Interior faces couple the two adjacent cells
/// group by group only, so every face stores a single scalar (p+1)^2 x (p+1)^2
/// block C_f with rows on the minus cell and columns on the plus cell; the
/// coupling of group g is eta_g * C_f and the transposed direction uses C_f^T.
class BlockOperator {
public:
  using BlockMap = Eigen::Map<Eigen::MatrixXd>;
  using ConstBlockMap = Eigen::Map<const Eigen::MatrixXd>;

  struct FaceLink {
    int face = -1;       // interior face index, -1 if none
    int neighbor = -1;   // adjacent cell
    bool minus = false;  // true if this cell is the minus side of the face
  };

  BlockOperator(const Mesh& mesh, const DgSpace& space, std::vector<double> diffusion);

  const DgSpace& space() const { return space_; }
  int level() const { return space_.level(); }
  int groups() const { return space_.groups(); }
  int nodes_per_cell() const { return space_.nodes_per_cell(); }
  int block_size() const { return space_.dofs_per_cell(); }
  std::size_t n_cells() const { return space_.n_cells(); }
  std::size_t n_dofs() const { return space_.n_dofs(); }
  std::size_t n_faces() const { return face_blocks_.size() / face_block_stride(); }
  const std::vector<double>& diffusion() const { return diffusion_; }

  BlockMap diagonal_block(std::size_t cell);
  ConstBlockMap diagonal_block(std::size_t cell) const;
  BlockMap face_block(std::size_t face);
  ConstBlockMap face_block(std::size_t face) const;
  const std::array<FaceLink, 4>& links(std::size_t cell) const { return links_[cell]; }

  DualVector apply(const PrimalVector& x) const;
  void apply(std::span<const double> x, std::span<double> y) const;

  /// out += scale * sum over neighbours k of A(cell, k) x_k.
  void add_offdiagonal(std::size_t cell, std::span<const double> x, std::span<double> out,
                       double scale) const;

  /// Copy keeping only the diagonal blocks.
  BlockOperator block_diagonal() const;

  Eigen::SparseMatrix<double> to_sparse() const;
  Eigen::MatrixXd to_dense() const;

  /// Matrix Market coordinate format, general real, 1-based indices.
  void write_matrix_market(std::ostream& os) const;

private:
  std::size_t diag_stride() const {
    return static_cast<std::size_t>(block_size()) * static_cast<std::size_t>(block_size());
  }
  std::size_t face_block_stride() const {
    return static_cast<std::size_t>(nodes_per_cell()) * static_cast<std::size_t>(nodes_per_cell());
  }

  DgSpace space_;
  std::vector<double> diffusion_;
  std::vector<double> diag_blocks_;
  std::vector<double> face_blocks_;
  std::vector<std::array<FaceLink, 4>> links_;
};

}  // namespace rdschwarz
