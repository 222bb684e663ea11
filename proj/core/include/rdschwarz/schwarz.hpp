#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "rdschwarz/block_operator.hpp"
#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Traversal order of the multiplicative (block Gauss-Seidel) sweep.
enum class CellOrder {
  lexicographic,  // ascending row-major cell index
  reverse,        // descending
  red_black,      // all (i+j) even cells, then all odd; cells of one colour do not couple
};

std::string_view to_string(CellOrder order);
/// "lexicographic", "reverse" or "red-black".
CellOrder parse_cell_order(std::string_view name);

/// Nonoverlapping cell-wise Schwarz smoother. Each subdomain is one mesh cell;
/// the local problems are the diagonal blocks of the operator, factorised once
/// with partial pivoting.
class CellBlockSolver {
public:
  explicit CellBlockSolver(const BlockOperator& op, double damping = 1.0,
                           CellOrder order = CellOrder::lexicographic);

  const BlockOperator& op() const { return *op_; }
  double damping() const { return damping_; }
  CellOrder order() const { return order_; }

  /// Block Jacobi: z|_K = damping * A_KK^{-1} r|_K for every cell.
  PrimalVector apply_additive(const DualVector& r) const;

  /// One block Gauss-Seidel sweep from x = 0: for each cell in traversal order,
  /// x|_K += damping * A_KK^{-1} (r - A x)|_K.
  PrimalVector apply_multiplicative(const DualVector& r) const;

  /// In place x|_K = A_KK^{-1} x|_K.
  void solve_block(std::size_t cell, std::span<double> x) const;

  /// The traversal sequence used by apply_multiplicative.
  std::vector<std::size_t> traversal() const;

private:
  const BlockOperator* op_;
  double damping_;
  CellOrder order_;
  std::vector<double> lu_;       // per cell, column-major L\U
  std::vector<int> pivots_;      // per cell, row permutation of P A = L U
};

}  // namespace rdschwarz
