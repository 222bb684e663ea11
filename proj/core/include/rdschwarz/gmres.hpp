#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rdschwarz/vectors.hpp"

namespace rdschwarz {

enum class PreconditionSide { left, right };

struct SolveConfig {
  double tolerance = 1e-8;  // relative residual reduction target
  int max_iterations = 100;
  int restart = 0;          // 0: no restart
  PreconditionSide side = PreconditionSide::right;

  void validate() const;
};

struct IterationReport {
  int iterations = 0;
  bool converged = false;
  /// Relative residual of the Krylov system after each step, starting with 1 for
  /// x0 = 0. With right preconditioning this is ||b - A x_k|| / ||b||.
  std::vector<double> residual_history;
  /// ||b - A x|| / ||b|| recomputed from the returned solution.
  double true_residual = 0.0;

  std::string method;
  int level = -1;
  double epsilon = 0.0;
  std::string source;
};

using ApplyOperator = std::function<DualVector(const PrimalVector&)>;
using ApplyPreconditioner = std::function<PrimalVector(const DualVector&)>;

struct GmresResult {
  PrimalVector x;
  IterationReport report;
};

/// GMRES with modified Gram-Schmidt (one reorthogonalisation pass when the
/// projected vector loses more than 30% of its norm) and Givens rotations.
/// Starts from x0 = 0. The iteration count is the number of Arnoldi steps taken
/// until the monitored relative residual drops to the tolerance. On a happy
/// breakdown the run reports convergence if the target is met and throws
/// std::runtime_error otherwise.
GmresResult gmres(const ApplyOperator& apply_a, const ApplyPreconditioner& apply_m, const DualVector& b,
                  const SolveConfig& config = {});

}  // namespace rdschwarz
