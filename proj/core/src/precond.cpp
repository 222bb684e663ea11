#include "rdschwarz/precond.hpp"

#include <stdexcept>
#include <string>

namespace rdschwarz {

std::string_view to_string(Method m) {
  switch (m) {
    case Method::none: return "U";
    case Method::two_level_additive: return "2AS";
    case Method::two_level_hybrid: return "2HS";
    case Method::two_level_multiplicative: return "2MS";
    case Method::mg_additive: return "MGAS";
    case Method::mg_multiplicative: return "MGMS";
  }
  return "?";
}

Method parse_method(std::string_view name) {
  if (name == "U" || name == "none") return Method::none;
  if (name == "2AS") return Method::two_level_additive;
  if (name == "2HS") return Method::two_level_hybrid;
  if (name == "2MS") return Method::two_level_multiplicative;
  if (name == "MGAS") return Method::mg_additive;
  if (name == "MGMS") return Method::mg_multiplicative;
  throw std::invalid_argument("unknown preconditioner '" + std::string(name) + "'");
}

std::string_view to_string(CoarsePlacement p) {
  switch (p) {
    case CoarsePlacement::symmetric: return "symmetric";
    case CoarsePlacement::coarse_first: return "coarse-first";
    case CoarsePlacement::coarse_last: return "coarse-last";
  }
  return "?";
}

CoarsePlacement parse_coarse_placement(std::string_view name) {
  if (name == "symmetric") return CoarsePlacement::symmetric;
  if (name == "coarse-first") return CoarsePlacement::coarse_first;
  if (name == "coarse-last") return CoarsePlacement::coarse_last;
  throw std::invalid_argument("unknown coarse placement '" + std::string(name) + "'");
}

bool is_two_level(Method m) {
  return m == Method::two_level_additive || m == Method::two_level_hybrid || m == Method::two_level_multiplicative;
}

bool is_vcycle(Method m) { return m == Method::mg_additive || m == Method::mg_multiplicative; }

TwoLevel::TwoLevel(TwoLevelKind kind, const BlockOperator& fine, const TransferPair& transfer,
                   std::shared_ptr<const Preconditioner> smoother, std::shared_ptr<const Preconditioner> coarse_solver,
                   CoarsePlacement placement)
    : kind_(kind),
      fine_(&fine),
      transfer_(&transfer),
      smoother_(std::move(smoother)),
      coarse_(std::move(coarse_solver)),
      placement_(placement) {
  if (!smoother_ || !coarse_) throw std::invalid_argument("TwoLevel: missing smoother or coarse solver");
  if (transfer.fine_level() != fine.level()) throw std::invalid_argument("TwoLevel: transfer does not match level");
}

std::string TwoLevel::name() const {
  switch (kind_) {
    case TwoLevelKind::additive: return "two-level additive";
    case TwoLevelKind::hybrid: return "two-level hybrid";
    case TwoLevelKind::multiplicative: return "two-level multiplicative";
  }
  return "two-level";
}

PrimalVector TwoLevel::coarse_correction(const DualVector& r) const {
  return transfer_->prolongate(coarse_->apply(transfer_->restrict_residual(r)));
}

PrimalVector TwoLevel::apply(const DualVector& r) const {
  switch (kind_) {
    case TwoLevelKind::additive: {
      PrimalVector z = coarse_correction(r);
      z += smoother_->apply(r);
      return z;
    }
    case TwoLevelKind::hybrid: {
      PrimalVector z = smoother_->apply(r);
      z += coarse_correction(r - fine_->apply(z));
      z += smoother_->apply(r - fine_->apply(z));
      return z;
    }
    case TwoLevelKind::multiplicative: {
      if (placement_ == CoarsePlacement::coarse_first) {
        PrimalVector z = coarse_correction(r);
        z += smoother_->apply(r - fine_->apply(z));
        return z;
      }
      PrimalVector z = smoother_->apply(r);
      z += coarse_correction(r - fine_->apply(z));
      if (placement_ == CoarsePlacement::symmetric) z += smoother_->apply(r - fine_->apply(z));
      return z;
    }
  }
  throw std::logic_error("TwoLevel: unknown kind");
}

VCycle::VCycle(std::vector<const BlockOperator*> operators, std::vector<const TransferPair*> transfers,
               std::vector<std::shared_ptr<const Preconditioner>> smoothers,
               std::shared_ptr<const Preconditioner> coarsest, int smoothing_steps)
    : operators_(std::move(operators)),
      transfers_(std::move(transfers)),
      smoothers_(std::move(smoothers)),
      coarsest_(std::move(coarsest)),
      steps_(smoothing_steps) {
  if (operators_.empty()) throw std::invalid_argument("VCycle: no levels");
  if (transfers_.size() + 1 != operators_.size() || smoothers_.size() != operators_.size())
    throw std::invalid_argument("VCycle: inconsistent level data");
  if (steps_ < 1) throw std::invalid_argument("VCycle: need at least one smoothing step");
  if (!coarsest_) throw std::invalid_argument("VCycle: missing coarsest solver");
  for (std::size_t l = 1; l < operators_.size(); ++l)
    if (!smoothers_[l]) throw std::invalid_argument("VCycle: missing smoother");
}

void VCycle::smooth(int level, const DualVector& g, PrimalVector& x, bool first) const {
  const auto& smoother = *smoothers_[static_cast<std::size_t>(level)];
  if (first) {
    x = smoother.apply(g);
    return;
  }
  x += smoother.apply(g - operators_[static_cast<std::size_t>(level)]->apply(x));
}

PrimalVector VCycle::apply_level(int level, const DualVector& g) const {
  if (level == 0) return coarsest_->apply(g);
  const BlockOperator& a = *operators_[static_cast<std::size_t>(level)];
  const TransferPair& t = *transfers_[static_cast<std::size_t>(level) - 1];

  PrimalVector x(g.size());
  for (int i = 0; i < steps_; ++i) smooth(level, g, x, i == 0);
  x += t.prolongate(apply_level(level - 1, t.restrict_residual(g - a.apply(x))));
  for (int i = 0; i < steps_; ++i) smooth(level, g, x, false);
  return x;
}

MultilevelSetup::MultilevelSetup(int finest_level, const ProblemParams& params)
    : params_(params), meshes_(finest_level) {
  params_.validate();
  ops_.resize(static_cast<std::size_t>(finest_level) + 1);
  transfers_.resize(static_cast<std::size_t>(finest_level) + 1);
}

void MultilevelSetup::ensure_level(int level) const {
  if (level < 0 || level > finest_level())
    throw std::out_of_range("MultilevelSetup: level " + std::to_string(level) + " not in hierarchy");
}

const BlockOperator& MultilevelSetup::op(int level) const {
  ensure_level(level);
  auto& slot = ops_[static_cast<std::size_t>(level)];
  if (!slot) slot.emplace(assemble_operator(meshes_.level(level), params_));
  return *slot;
}

const TransferPair& MultilevelSetup::transfer(int fine_level) const {
  ensure_level(fine_level);
  if (fine_level < 1) throw std::out_of_range("MultilevelSetup: no transfer into level 0");
  auto& slot = transfers_[static_cast<std::size_t>(fine_level)];
  if (!slot) slot.emplace(meshes_, fine_level, params_.degree, params_.groups());
  return *slot;
}

std::shared_ptr<const CellBlockSolver> MultilevelSetup::cell_solver(int level, double damping, CellOrder order) {
  for (const auto& c : cell_cache_)
    if (c.level == level && c.damping == damping && c.order == order) return c.solver;
  auto solver = std::make_shared<const CellBlockSolver>(op(level), damping, order);
  cell_cache_.push_back({level, damping, order, solver});
  return solver;
}

std::shared_ptr<const DirectSolver> MultilevelSetup::direct_solver(int level) {
  ensure_level(level);
  if (direct_cache_.size() <= static_cast<std::size_t>(level)) direct_cache_.resize(static_cast<std::size_t>(level) + 1);
  auto& slot = direct_cache_[static_cast<std::size_t>(level)];
  if (!slot) slot = std::make_shared<const DirectSolver>(op(level));
  return slot;
}

std::unique_ptr<Preconditioner> MultilevelSetup::make(Method method, const PreconditionerOptions& options) {
  const int L = finest_level();
  auto smoother = [&](int level, bool multiplicative) -> std::shared_ptr<const Preconditioner> {
    auto cells = cell_solver(level, options.damping, multiplicative ? options.order : CellOrder::lexicographic);
    if (multiplicative) return std::make_shared<MultiplicativeSchwarz>(std::move(cells));
    return std::make_shared<AdditiveSchwarz>(std::move(cells));
  };

  if (method == Method::none) return std::make_unique<IdentityPreconditioner>();

  if (is_two_level(method)) {
    if (L < 1) throw std::invalid_argument("two-level methods need at least two levels");
    const bool mult = method == Method::two_level_multiplicative;
    const TwoLevelKind kind = method == Method::two_level_additive ? TwoLevelKind::additive
                              : method == Method::two_level_hybrid ? TwoLevelKind::hybrid
                                                                   : TwoLevelKind::multiplicative;
    auto coarse = std::make_shared<DirectPreconditioner>(direct_solver(L - 1));
    return std::make_unique<TwoLevel>(kind, op(L), transfer(L), smoother(L, mult), std::move(coarse),
                                      options.placement);
  }

  const bool mult = method == Method::mg_multiplicative;
  std::vector<const BlockOperator*> ops;
  std::vector<const TransferPair*> transfers;
  std::vector<std::shared_ptr<const Preconditioner>> smoothers;
  for (int l = 0; l <= L; ++l) {
    ops.push_back(&op(l));
    smoothers.push_back(l == 0 ? nullptr : smoother(l, mult));
    if (l > 0) transfers.push_back(&transfer(l));
  }
  // level 0 is a single cell: its diagonal block is the whole operator
  auto coarsest = std::make_shared<AdditiveSchwarz>(cell_solver(0));
  return std::make_unique<VCycle>(std::move(ops), std::move(transfers), std::move(smoothers), std::move(coarsest),
                                  options.smoothing_steps);
}

}  // namespace rdschwarz
