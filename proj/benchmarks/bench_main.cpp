#include <benchmark/benchmark.h>

#include "vorwave/cm_reduction.hpp"
#include "vorwave/diagnostics.hpp"
#include "vorwave/laminar.hpp"
#include "vorwave/seed.hpp"
#include "vorwave/strip_solver.hpp"
#include "vorwave/sturm.hpp"

namespace {

using namespace vorwave;

struct Setup {
  LaminarFlow flow = solve_laminar(Vorticity::affine(1.0));
  EigenSolution eig = principal_eigen(flow, flow.alpha_tilde_cr);
  CMCoefficients cm = compute_coefficients(flow, eig);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

Grid grid_for(const benchmark::State& state) {
  const auto nx = static_cast<std::size_t>(state.range(0));
  return Grid{40.0, nx, (nx - 1) / 5 + 1, LateralClosure::even_half_strip};
}

void BM_Laminar(benchmark::State& state) {
  const auto v = Vorticity::polynomial({0.3, -0.6, 0.9});
  for (auto _ : state) benchmark::DoNotOptimize(solve_laminar(v, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_Laminar)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);

void BM_PrincipalEigen(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        principal_eigen(s.flow, s.flow.alpha_tilde_cr, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PrincipalEigen)->Arg(1025)->Arg(4097)->Unit(benchmark::kMillisecond);

void BM_Coefficients(benchmark::State& state) {
  const auto& s = setup();
  for (auto _ : state) benchmark::DoNotOptimize(compute_coefficients(s.flow, s.eig));
}
BENCHMARK(BM_Coefficients)->Unit(benchmark::kMillisecond);

void BM_SolverSetup(benchmark::State& state) {
  const Grid g = grid_for(state);
  for (auto _ : state) benchmark::DoNotOptimize(StripSolver(g, setup().flow));
}
BENCHMARK(BM_SolverSetup)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_Residual(benchmark::State& state) {
  const auto& s = setup();
  const StripSolver solver(grid_for(state), s.flow);
  const WaveState seed = small_amplitude_seed(solver, s.eig, s.cm, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(solver.residual(seed));
}
BENCHMARK(BM_Residual)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_NewtonDirection(benchmark::State& state) {
  const auto& s = setup();
  const StripSolver solver(grid_for(state), s.flow);
  const WaveState seed = small_amplitude_seed(solver, s.eig, s.cm, 0.02);
  const Residual r = solver.residual(seed);
  for (auto _ : state) benchmark::DoNotOptimize(solver.newton_direction(seed, r));
}
BENCHMARK(BM_NewtonDirection)->Arg(101)->Arg(201)->Arg(401)->Unit(benchmark::kMillisecond);

void BM_FlowForceProfile(benchmark::State& state) {
  const auto& s = setup();
  const StripSolver solver(grid_for(state), s.flow);
  const WaveState seed = small_amplitude_seed(solver, s.eig, s.cm, 0.02);
  for (auto _ : state) benchmark::DoNotOptimize(flow_force_profile(solver, seed));
}
BENCHMARK(BM_FlowForceProfile)->Arg(201)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
