#include "rdschwarz/block_operator.hpp"

#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace rdschwarz {

BlockOperator::BlockOperator(const Mesh& mesh, const DgSpace& space, std::vector<double> diffusion)
    : space_(space), diffusion_(std::move(diffusion)) {
  if (mesh.level() != space.level())
    throw std::invalid_argument("BlockOperator: mesh and space levels differ");
  if (static_cast<int>(diffusion_.size()) != space.groups())
    throw std::invalid_argument("BlockOperator: one diffusion coefficient per group required");
  diag_blocks_.assign(n_cells() * diag_stride(), 0.0);
  face_blocks_.assign(mesh.interior_faces().size() * face_block_stride(), 0.0);
  links_.resize(n_cells());
  const auto& faces = mesh.interior_faces();
  for (std::size_t f = 0; f < faces.size(); ++f) {
    const InteriorFace& face = faces[f];
    const int slot_minus = face.normal == Axis::x ? static_cast<int>(Side::east) : static_cast<int>(Side::north);
    const int slot_plus = face.normal == Axis::x ? static_cast<int>(Side::west) : static_cast<int>(Side::south);
    links_[static_cast<std::size_t>(face.minus)][static_cast<std::size_t>(slot_minus)] = {
        static_cast<int>(f), face.plus, true};
    links_[static_cast<std::size_t>(face.plus)][static_cast<std::size_t>(slot_plus)] = {
        static_cast<int>(f), face.minus, false};
  }
}

BlockOperator::BlockMap BlockOperator::diagonal_block(std::size_t cell) {
  return BlockMap(diag_blocks_.data() + cell * diag_stride(), block_size(), block_size());
}

BlockOperator::ConstBlockMap BlockOperator::diagonal_block(std::size_t cell) const {
  return ConstBlockMap(diag_blocks_.data() + cell * diag_stride(), block_size(), block_size());
}

BlockOperator::BlockMap BlockOperator::face_block(std::size_t face) {
  return BlockMap(face_blocks_.data() + face * face_block_stride(), nodes_per_cell(), nodes_per_cell());
}

BlockOperator::ConstBlockMap BlockOperator::face_block(std::size_t face) const {
  return ConstBlockMap(face_blocks_.data() + face * face_block_stride(), nodes_per_cell(),
                       nodes_per_cell());
}

DualVector BlockOperator::apply(const PrimalVector& x) const {
  if (x.size() != n_dofs()) throw std::invalid_argument("BlockOperator::apply: size mismatch");
  DualVector y(n_dofs());
  apply(x.span(), y.span());
  return y;
}

void BlockOperator::apply(std::span<const double> x, std::span<double> y) const {
  const auto bs = static_cast<std::size_t>(block_size());
  for (std::size_t c = 0; c < n_cells(); ++c) {
    const double* a = diag_blocks_.data() + c * diag_stride();
    const double* xc = x.data() + c * bs;
    double* yc = y.data() + c * bs;
    for (std::size_t r = 0; r < bs; ++r) yc[r] = 0.0;
    // column-major block
    for (std::size_t col = 0; col < bs; ++col) {
      const double xv = xc[col];
      const double* acol = a + col * bs;
      for (std::size_t r = 0; r < bs; ++r) yc[r] += acol[r] * xv;
    }
    add_offdiagonal(c, x, y.subspan(c * bs, bs), 1.0);
  }
}

void BlockOperator::add_offdiagonal(std::size_t cell, std::span<const double> x,
                                    std::span<double> out, double scale) const {
  const auto nloc = static_cast<std::size_t>(nodes_per_cell());
  const auto bs = static_cast<std::size_t>(block_size());
  for (const FaceLink& link : links_[cell]) {
    if (link.face < 0) continue;
    const double* cf = face_blocks_.data() + static_cast<std::size_t>(link.face) * face_block_stride();
    const double* xn = x.data() + static_cast<std::size_t>(link.neighbor) * bs;
    for (std::size_t g = 0; g < diffusion_.size(); ++g) {
      const double eta = scale * diffusion_[g];
      const double* xg = xn + g * nloc;
      double* og = out.data() + g * nloc;
      if (link.minus) {
        // rows of C_f belong to this cell: out += eta * C_f * x
        for (std::size_t col = 0; col < nloc; ++col) {
          const double xv = eta * xg[col];
          const double* ccol = cf + col * nloc;
          for (std::size_t r = 0; r < nloc; ++r) og[r] += ccol[r] * xv;
        }
      } else {
        // out += eta * C_f^T * x
        for (std::size_t r = 0; r < nloc; ++r) {
          const double* ccol = cf + r * nloc;
          double s = 0.0;
          for (std::size_t k = 0; k < nloc; ++k) s += ccol[k] * xg[k];
          og[r] += eta * s;
        }
      }
    }
  }
}

BlockOperator BlockOperator::block_diagonal() const {
  BlockOperator copy = *this;
  std::fill(copy.face_blocks_.begin(), copy.face_blocks_.end(), 0.0);
  return copy;
}

Eigen::SparseMatrix<double> BlockOperator::to_sparse() const {
  const auto bs = static_cast<std::size_t>(block_size());
  const auto nloc = static_cast<std::size_t>(nodes_per_cell());
  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(n_cells() * (bs * bs + 4 * diffusion_.size() * nloc * nloc));
  for (std::size_t c = 0; c < n_cells(); ++c) {
    const auto a = diagonal_block(c);
    const auto base = static_cast<Eigen::Index>(c * bs);
    for (Eigen::Index col = 0; col < a.cols(); ++col)
      for (Eigen::Index r = 0; r < a.rows(); ++r)
        if (a(r, col) != 0.0) entries.emplace_back(base + r, base + col, a(r, col));
    for (const FaceLink& link : links_[c]) {
      if (link.face < 0) continue;
      const auto cf = face_block(static_cast<std::size_t>(link.face));
      const auto nbase = static_cast<Eigen::Index>(static_cast<std::size_t>(link.neighbor) * bs);
      for (std::size_t g = 0; g < diffusion_.size(); ++g) {
        const auto goff = static_cast<Eigen::Index>(g * nloc);
        for (Eigen::Index r = 0; r < cf.rows(); ++r)
          for (Eigen::Index col = 0; col < cf.cols(); ++col) {
            const double v = diffusion_[g] * (link.minus ? cf(r, col) : cf(col, r));
            if (v != 0.0) entries.emplace_back(base + goff + r, nbase + goff + col, v);
          }
      }
    }
  }
  const auto n = static_cast<Eigen::Index>(n_dofs());
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

Eigen::MatrixXd BlockOperator::to_dense() const { return Eigen::MatrixXd(to_sparse()); }

void BlockOperator::write_matrix_market(std::ostream& os) const {
  Eigen::SparseMatrix<double, Eigen::RowMajor> m = to_sparse();
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << "% IP-DG block operator: level " << level() << ", groups " << groups() << ", degree "
     << space_.degree() << "\n";
  os << m.rows() << " " << m.cols() << " " << m.nonZeros() << "\n";
  os << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.outerSize(); ++r)
    for (Eigen::SparseMatrix<double, Eigen::RowMajor>::InnerIterator it(m, r); it; ++it)
      os << (it.row() + 1) << " " << (it.col() + 1) << " " << it.value() << "\n";
}

}  // namespace rdschwarz
