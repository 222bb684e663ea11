#include "rdschwarz/schwarz.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

namespace rdschwarz {

std::string_view to_string(CellOrder order) {
  switch (order) {
    case CellOrder::lexicographic: return "lexicographic";
    case CellOrder::reverse: return "reverse";
    case CellOrder::red_black: return "red-black";
  }
  return "?";
}

CellOrder parse_cell_order(std::string_view name) {
  if (name == "lexicographic") return CellOrder::lexicographic;
  if (name == "reverse") return CellOrder::reverse;
  if (name == "red-black") return CellOrder::red_black;
  throw std::invalid_argument("unknown cell order '" + std::string(name) + "'");
}

CellBlockSolver::CellBlockSolver(const BlockOperator& op, double damping, CellOrder order)
    : op_(&op), damping_(damping), order_(order) {
  const int bs = op.block_size();
  const auto stride = static_cast<std::size_t>(bs) * static_cast<std::size_t>(bs);
  lu_.resize(op.n_cells() * stride);
  pivots_.resize(op.n_cells() * static_cast<std::size_t>(bs));
  for (std::size_t c = 0; c < op.n_cells(); ++c) {
    const Eigen::PartialPivLU<Eigen::MatrixXd> lu(op.diagonal_block(c));
    const Eigen::MatrixXd& factors = lu.matrixLU();
    for (int k = 0; k < bs; ++k)
      if (!(std::abs(factors(k, k)) > 0.0) || !std::isfinite(factors(k, k)))
        throw std::runtime_error("CellBlockSolver: singular diagonal block in cell " + std::to_string(c));
    std::copy(factors.data(), factors.data() + stride, lu_.begin() + static_cast<std::ptrdiff_t>(c * stride));
    const auto& perm = lu.permutationP().indices();
    for (int k = 0; k < bs; ++k) pivots_[c * static_cast<std::size_t>(bs) + static_cast<std::size_t>(k)] = perm(k);
  }
}

void CellBlockSolver::solve_block(std::size_t cell, std::span<double> x) const {
  const int bs = op_->block_size();
  const auto stride = static_cast<std::size_t>(bs) * static_cast<std::size_t>(bs);
  const double* a = lu_.data() + cell * stride;
  const int* perm = pivots_.data() + cell * static_cast<std::size_t>(bs);
  // P maps row k to row perm[k]: (P b)[perm[k]] = b[k]
  double buf[64];
  std::vector<double> heap;
  double* y = buf;
  if (bs > 64) {
    heap.resize(static_cast<std::size_t>(bs));
    y = heap.data();
  }
  for (int k = 0; k < bs; ++k) y[perm[k]] = x[static_cast<std::size_t>(k)];
  // unit lower triangular, column-major
  for (int col = 0; col < bs; ++col) {
    const double v = y[col];
    const double* acol = a + static_cast<std::size_t>(col) * static_cast<std::size_t>(bs);
    for (int r = col + 1; r < bs; ++r) y[r] -= acol[r] * v;
  }
  for (int col = bs - 1; col >= 0; --col) {
    const double* acol = a + static_cast<std::size_t>(col) * static_cast<std::size_t>(bs);
    y[col] /= acol[col];
    const double v = y[col];
    for (int r = 0; r < col; ++r) y[r] -= acol[r] * v;
  }
  for (int k = 0; k < bs; ++k) x[static_cast<std::size_t>(k)] = y[k];
}

PrimalVector CellBlockSolver::apply_additive(const DualVector& r) const {
  if (r.size() != op_->n_dofs()) throw std::invalid_argument("apply_additive: size mismatch");
  const auto bs = static_cast<std::size_t>(op_->block_size());
  PrimalVector z(std::vector<double>(r.values()));
  for (std::size_t c = 0; c < op_->n_cells(); ++c) solve_block(c, z.span().subspan(c * bs, bs));
  if (damping_ != 1.0) z *= damping_;
  return z;
}

std::vector<std::size_t> CellBlockSolver::traversal() const {
  const std::size_t n = op_->n_cells();
  std::vector<std::size_t> seq;
  seq.reserve(n);
  switch (order_) {
    case CellOrder::lexicographic:
      for (std::size_t c = 0; c < n; ++c) seq.push_back(c);
      break;
    case CellOrder::reverse:
      for (std::size_t c = n; c-- > 0;) seq.push_back(c);
      break;
    case CellOrder::red_black: {
      const auto side = static_cast<std::size_t>(1) << op_->level();
      for (std::size_t colour = 0; colour < 2; ++colour)
        for (std::size_t c = 0; c < n; ++c)
          if (((c % side) + (c / side)) % 2 == colour) seq.push_back(c);
      break;
    }
  }
  return seq;
}

PrimalVector CellBlockSolver::apply_multiplicative(const DualVector& r) const {
  if (r.size() != op_->n_dofs()) throw std::invalid_argument("apply_multiplicative: size mismatch");
  const auto bs = static_cast<std::size_t>(op_->block_size());
  PrimalVector x(r.size());
  auto xs = x.span();
  // x|_K is still zero when K is visited, so the local residual is r_K - sum_k A_Kk x_k.
  auto visit = [&](std::size_t c) {
    auto xc = xs.subspan(c * bs, bs);
    for (std::size_t k = 0; k < bs; ++k) xc[k] = r[c * bs + k];
    op_->add_offdiagonal(c, xs, xc, -1.0);
    solve_block(c, xc);
    if (damping_ != 1.0)
      for (double& v : xc) v *= damping_;
  };
  switch (order_) {
    case CellOrder::lexicographic:
      for (std::size_t c = 0; c < op_->n_cells(); ++c) visit(c);
      break;
    default:
      for (std::size_t c : traversal()) visit(c);
      break;
  }
  return x;
}

}  // namespace rdschwarz
