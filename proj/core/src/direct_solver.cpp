#include "rdschwarz/direct_solver.hpp"

#include <stdexcept>

#include <Eigen/SparseCholesky>

namespace rdschwarz {

struct DirectSolver::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt;
};

DirectSolver::DirectSolver(const BlockOperator& op) : impl_(std::make_unique<Impl>()), n_(op.n_dofs()) {
  const Eigen::SparseMatrix<double> a = op.to_sparse();
  impl_->ldlt.compute(a);
  if (impl_->ldlt.info() != Eigen::Success)
    throw std::runtime_error("DirectSolver: factorisation failed");
}

DirectSolver::~DirectSolver() = default;
DirectSolver::DirectSolver(DirectSolver&&) noexcept = default;
DirectSolver& DirectSolver::operator=(DirectSolver&&) noexcept = default;

PrimalVector DirectSolver::solve(const DualVector& rhs) const {
  if (rhs.size() != n_) throw std::invalid_argument("DirectSolver::solve: size mismatch");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n_));
  PrimalVector x(n_);
  Eigen::Map<Eigen::VectorXd>(x.data(), static_cast<Eigen::Index>(n_)) = impl_->ldlt.solve(b);
  return x;
}

}  // namespace rdschwarz
