#pragma once

#include <memory>

#include "rdschwarz/block_operator.hpp"
#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

/// Sparse direct factorisation of a symmetric block operator (LDL^T with AMD ordering).
class DirectSolver {
public:
  explicit DirectSolver(const BlockOperator& op);
  ~DirectSolver();
  DirectSolver(DirectSolver&&) noexcept;
  DirectSolver& operator=(DirectSolver&&) noexcept;

  std::size_t size() const { return n_; }
  PrimalVector solve(const DualVector& rhs) const;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::size_t n_;
};

}  // namespace rdschwarz
