// Cost of the building blocks on the five-group contrast problem. The argument
// is the mesh level (2^level cells per side).

#include <benchmark/benchmark.h>

#include <memory>

#include "rdschwarz/assembly.hpp"
#include "rdschwarz/gmres.hpp"
#include "rdschwarz/precond.hpp"

namespace {

using namespace rdschwarz;

ProblemParams contrast5() {
  ProblemParams p = ProblemParams::poisson(5);
  p.reaction = ReactionModel::contrast(5, 0.1);
  return p;
}

DualVector unit_rhs(const MultilevelSetup& s) {
  return assemble_rhs(s.meshes().finest(), s.params(), {1, 0, 1, 0, 1});
}

void BM_Assemble(benchmark::State& state) {
  const ProblemParams p = contrast5();
  const Mesh mesh(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(assemble_operator(mesh, p));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(mesh.n_cells()));
}
BENCHMARK(BM_Assemble)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_OperatorApply(benchmark::State& state) {
  const int level = static_cast<int>(state.range(0));
  const BlockOperator a = assemble_operator(Mesh(level), contrast5());
  const PrimalVector x(a.n_dofs(), 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(a.apply(x));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.n_dofs()));
}
BENCHMARK(BM_OperatorApply)->DenseRange(4, 8)->Unit(benchmark::kMillisecond);

void BM_Smoother(benchmark::State& state, bool multiplicative) {
  const int level = static_cast<int>(state.range(0));
  const BlockOperator a = assemble_operator(Mesh(level), contrast5());
  const CellBlockSolver cells(a);
  const DualVector r(a.n_dofs(), 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(multiplicative ? cells.apply_multiplicative(r) : cells.apply_additive(r));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(a.n_cells()));
}
BENCHMARK_CAPTURE(BM_Smoother, additive, false)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Smoother, multiplicative, true)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_VCycle(benchmark::State& state, Method method) {
  MultilevelSetup setup(static_cast<int>(state.range(0)), contrast5());
  const auto pc = setup.make(method);
  const DualVector r = unit_rhs(setup);
  pc->apply(r);  // factorise the coarsest level outside the timing
  for (auto _ : state) benchmark::DoNotOptimize(pc->apply(r));
}
BENCHMARK_CAPTURE(BM_VCycle, MGAS, Method::mg_additive)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_VCycle, MGMS, Method::mg_multiplicative)->DenseRange(4, 7)->Unit(benchmark::kMillisecond);

void BM_Solve(benchmark::State& state, Method method) {
  MultilevelSetup setup(static_cast<int>(state.range(0)), contrast5());
  const auto pc = setup.make(method);
  const DualVector b = unit_rhs(setup);
  const BlockOperator& a = setup.op(setup.finest_level());
  int iterations = 0;
  for (auto _ : state) {
    const auto res = gmres([&](const PrimalVector& x) { return a.apply(x); },
                           [&](const DualVector& r) { return pc->apply(r); }, b);
    iterations = res.report.iterations;
  }
  state.counters["gmres_iterations"] = iterations;
}
BENCHMARK_CAPTURE(BM_Solve, 2HS, Method::two_level_hybrid)->DenseRange(3, 5)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(BM_Solve, MGMS, Method::mg_multiplicative)->DenseRange(3, 6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
