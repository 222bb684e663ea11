#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/block_operator.hpp"
#include "rdschwarz/direct_solver.hpp"
#include "rdschwarz/mesh.hpp"
#include "rdschwarz/preconditioner.hpp"
#include "rdschwarz/schwarz.hpp"
#include "rdschwarz/transfer.hpp"

namespace rdschwarz {

/// Preconditioners selectable by name: none, 2AS, 2HS, 2MS, MGAS, MGMS.
enum class Method { none, two_level_additive, two_level_hybrid, two_level_multiplicative, mg_additive, mg_multiplicative };

std::string_view to_string(Method m);
Method parse_method(std::string_view name);
bool is_two_level(Method m);
bool is_vcycle(Method m);

class IdentityPreconditioner final : public Preconditioner {
public:
  PrimalVector apply(const DualVector& r) const override { return PrimalVector(r.values()); }
  std::string name() const override { return "none"; }
};

/// Block Jacobi over cells.
class AdditiveSchwarz final : public Preconditioner {
public:
  explicit AdditiveSchwarz(std::shared_ptr<const CellBlockSolver> cells) : cells_(std::move(cells)) {}
  PrimalVector apply(const DualVector& r) const override { return cells_->apply_additive(r); }
  std::string name() const override { return "additive Schwarz"; }

private:
  std::shared_ptr<const CellBlockSolver> cells_;
};

/// One block Gauss-Seidel sweep over cells.
class MultiplicativeSchwarz final : public Preconditioner {
public:
  explicit MultiplicativeSchwarz(std::shared_ptr<const CellBlockSolver> cells) : cells_(std::move(cells)) {}
  PrimalVector apply(const DualVector& r) const override { return cells_->apply_multiplicative(r); }
  std::string name() const override { return "multiplicative Schwarz"; }

private:
  std::shared_ptr<const CellBlockSolver> cells_;
};

class DirectPreconditioner final : public Preconditioner {
public:
  explicit DirectPreconditioner(std::shared_ptr<const DirectSolver> solver) : solver_(std::move(solver)) {}
  PrimalVector apply(const DualVector& r) const override { return solver_->solve(r); }
  std::string name() const override { return "direct"; }

private:
  std::shared_ptr<const DirectSolver> solver_;
};

enum class TwoLevelKind { additive, hybrid, multiplicative };

/// Placement of the coarse correction in the two-level multiplicative method.
/// symmetric: sweep, coarse correction, sweep (the coarse space sits between two
/// Gauss-Seidel sweeps). coarse_first / coarse_last: a single sweep after or
/// before the coarse correction.
enum class CoarsePlacement { symmetric, coarse_first, coarse_last };

std::string_view to_string(CoarsePlacement p);
CoarsePlacement parse_coarse_placement(std::string_view name);

/// Two-level Schwarz method with an exact solve of the rediscretised coarse problem.
///
///  additive:       z = E A0^{-1} E^T r + S r
///  hybrid:         smooth with S, coarse correction, smooth with S
///  multiplicative: S and the coarse correction applied in turn on the current
///                  residual, ordered by CoarsePlacement
/// where S is the fine-level subdomain smoother. All start from z = 0.
class TwoLevel final : public Preconditioner {
public:
  TwoLevel(TwoLevelKind kind, const BlockOperator& fine, const TransferPair& transfer,
           std::shared_ptr<const Preconditioner> smoother, std::shared_ptr<const Preconditioner> coarse_solver,
           CoarsePlacement placement = CoarsePlacement::symmetric);

  PrimalVector apply(const DualVector& r) const override;
  std::string name() const override;

  PrimalVector coarse_correction(const DualVector& r) const;

private:
  TwoLevelKind kind_;
  const BlockOperator* fine_;
  const TransferPair* transfer_;
  std::shared_ptr<const Preconditioner> smoother_;
  std::shared_ptr<const Preconditioner> coarse_;
  CoarsePlacement placement_;
};

/// Multigrid V-cycle with m pre- and post-smoothing steps, x0 = 0 and an exact
/// solve on level 0.
class VCycle final : public Preconditioner {
public:
  /// operators[l] and smoothers[l] for l = 0..L; transfers[l-1] connects l-1 and l.
  /// smoothers[0] is unused, coarsest solves use `coarsest`.
  VCycle(std::vector<const BlockOperator*> operators, std::vector<const TransferPair*> transfers,
         std::vector<std::shared_ptr<const Preconditioner>> smoothers,
         std::shared_ptr<const Preconditioner> coarsest, int smoothing_steps);

  int finest_level() const { return static_cast<int>(operators_.size()) - 1; }
  int smoothing_steps() const { return steps_; }

  PrimalVector apply(const DualVector& r) const override { return apply_level(finest_level(), r); }
  PrimalVector apply_level(int level, const DualVector& g) const;
  std::string name() const override { return "V-cycle"; }

private:
  void smooth(int level, const DualVector& g, PrimalVector& x, bool first) const;

  std::vector<const BlockOperator*> operators_;
  std::vector<const TransferPair*> transfers_;
  std::vector<std::shared_ptr<const Preconditioner>> smoothers_;
  std::shared_ptr<const Preconditioner> coarsest_;
  int steps_;
};

struct PreconditionerOptions {
  int smoothing_steps = 1;
  double damping = 1.0;
  CellOrder order = CellOrder::lexicographic;
  CoarsePlacement placement = CoarsePlacement::symmetric;  // 2MS only
};

/// Meshes, rediscretised operators and transfers for levels 0..L, plus lazily
/// built factorisations shared by all preconditioners created from it. Must
/// outlive every preconditioner it creates.
class MultilevelSetup {
public:
  MultilevelSetup(int finest_level, const ProblemParams& params);

  int finest_level() const { return meshes_.finest_level(); }
  const ProblemParams& params() const { return params_; }
  const MeshHierarchy& meshes() const { return meshes_; }
  const BlockOperator& op(int level) const;
  const TransferPair& transfer(int fine_level) const;

  std::shared_ptr<const CellBlockSolver> cell_solver(int level, double damping = 1.0,
                                                     CellOrder order = CellOrder::lexicographic);
  std::shared_ptr<const DirectSolver> direct_solver(int level);

  std::unique_ptr<Preconditioner> make(Method method, const PreconditionerOptions& options = {});

private:
  void ensure_level(int level) const;

  ProblemParams params_;
  MeshHierarchy meshes_;
  mutable std::vector<std::optional<BlockOperator>> ops_;
  mutable std::vector<std::optional<TransferPair>> transfers_;
  struct CachedCells {
    int level;
    double damping;
    CellOrder order;
    std::shared_ptr<const CellBlockSolver> solver;
  };
  std::vector<CachedCells> cell_cache_;
  std::vector<std::shared_ptr<const DirectSolver>> direct_cache_;
};

}  // namespace rdschwarz
