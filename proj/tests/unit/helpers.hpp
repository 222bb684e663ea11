#pragma once

#include <random>
#include <vector>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/gmres.hpp"
#include "rdschwarz/precond.hpp"

namespace rdschwarz::test {

inline std::vector<double> random_values(std::size_t n, unsigned seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = dist(gen);
  return v;
}

/// GMRES iterations for `method` on the table row `row` (mesh level row - 1).
inline int iterations(const ProblemParams& params, int row, Method method, const std::vector<double>& source,
                      const PreconditionerOptions& options = {}) {
  MultilevelSetup setup(row - 1, params);
  const BlockOperator& a = setup.op(row - 1);
  const auto pc = setup.make(method, options);
  const DualVector b = assemble_rhs(setup.meshes().finest(), params, source);
  const auto res = gmres([&](const PrimalVector& x) { return a.apply(x); },
                         [&](const DualVector& r) { return pc->apply(r); }, b);
  return res.report.converged ? res.report.iterations : -1;
}

inline ProblemParams with_reaction(ReactionKind kind, int groups, double eps) {
  ProblemParams p = ProblemParams::poisson(groups);
  p.reaction = ReactionModel::make(kind, groups, eps);
  return p;
}

}  // namespace rdschwarz::test
