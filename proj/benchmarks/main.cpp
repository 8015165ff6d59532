#include <benchmark/benchmark.h>

#include "lowmode/pipeline.hpp"
#include "lowmode/saturation.hpp"
#include "lowmode/solver.hpp"

namespace {

using namespace lowmode;

void bm_solver_step(benchmark::State& state) {
  SolverConfig cfg;
  cfg.grid = {M_PI, static_cast<int>(state.range(0))};
  cfg.mu = 0.1;
  cfg.t_final = 0.05;
  cfg.dt = 1e-3;
  cfg.snapshot_stride = 1 << 30;
  const auto xs = cfg.grid.nodes();
  std::vector<double> u0(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) u0[i] = 0.1 * std::sin(xs[i]);
  for (auto _ : state) {
    auto traj = solve(cfg, u0);
    benchmark::DoNotOptimize(traj.final_state().data());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<long>(cfg.t_final / cfg.dt));
}
BENCHMARK(bm_solver_step)->Arg(256)->Arg(512)->Arg(1024);

void bm_trig_multiply(benchmark::State& state) {
  FrequencyBasis b;
  TrigPoly p(b);
  TrigPoly q(b);
  for (int i = -3; i <= 3; ++i)
    for (int j = -3; j <= 3; ++j) {
      p.add_term({i, j}, 0.3 * i + 0.1, 0.2 * j - 0.05);
      q.add_term({j, i}, 0.1 * i, 0.4 * j + 0.02);
    }
  for (auto _ : state) {
    auto r = tp_multiply(p, q);
    benchmark::DoNotOptimize(&r);
  }
}
BENCHMARK(bm_trig_multiply);

void bm_fourier_project(benchmark::State& state) {
  FrequencyBasis b;
  Grid grid{8 * M_PI, 512};
  TrigPoly u0(b);
  TrigPoly uhat(b);
  uhat.add_term({1, 0}, 0.0, 0.2);
  uhat.add_term({0, 1}, 0.1, 0.0);
  const auto eta = straight_line_control(u0, uhat, 1.0, 0.5);
  const auto eta_n = spatial_cutoff(eta, 4, grid, 33);
  const auto omega = choose_projection_params(4, 2.0, b);
  for (auto _ : state) {
    auto p = fourier_project(eta_n, omega.omega, static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(&p);
  }
}
BENCHMARK(bm_fourier_project)->Arg(8)->Arg(16);

}  // namespace

BENCHMARK_MAIN();
