#include <cmath>

#include <benchmark/benchmark.h>

#include "cosmoferm/entanglement.hpp"
#include "cosmoferm/gaussian_state.hpp"
#include "cosmoferm/production.hpp"
#include "cosmoferm/quasiparticle.hpp"
#include "cosmoferm/real_space.hpp"

using namespace cosmoferm;

namespace {

CorrelationState quenched(int sites, double g0sq) {
  const LatticeSpec spec{sites, 1.0, -1.0, g0sq};
  const GroundState g = mass_quench_prepare(spec, 1.0, 1.0);
  EvolutionOptions opts;
  opts.step = 0.01;
  opts.sample_every = 1000;
  return evolve(g.state, ScaleFactorProfile(StaticProfile{1.0}), 5.0, opts).snapshots.back();
}

void BM_CorrelationRhs(benchmark::State& st) {
  const CorrelationState s = quenched(static_cast<int>(st.range(0)), 1.0);
  std::vector<double> sk, ck;
  for (double k : s.grid().momenta()) {
    sk.push_back(std::sin(k));
    ck.push_back(std::cos(k));
  }
  std::vector<Mat2> out(s.size());
  for (auto _ : st) {
    correlation_rhs(s.spec(), sk, ck, 1.0, s.blocks(), out);
    benchmark::DoNotOptimize(out.data());
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_CorrelationRhs)->Arg(128)->Arg(512)->Arg(2048);

// 100 RK4 steps per iteration
void BM_Rk4Steps(benchmark::State& st) {
  const CorrelationState s = quenched(static_cast<int>(st.range(0)), 1.0);
  EvolutionOptions opts;
  opts.step = 0.01;
  opts.sample_every = 1000;
  const ScaleFactorProfile p(StaticProfile{1.0});
  for (auto _ : st) {
    CorrelationState start = s;
    start.set_time(0.0);
    benchmark::DoNotOptimize(evolve(start, p, 1.0, opts));
  }
}
BENCHMARK(BM_Rk4Steps)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_RealSpaceFft(benchmark::State& st) {
  const CorrelationState s = quenched(static_cast<int>(st.range(0)), 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(real_space_correlation(s));
}
BENCHMARK(BM_RealSpaceFft)->Arg(128)->Arg(512)->Arg(2048);

void BM_Contour(benchmark::State& st) {
  const int len = static_cast<int>(st.range(0));
  const RealSpaceCorrelation g = real_space_correlation(quenched(512, 0.0));
  const BlockSpec block = BlockSpec::centered(len, 512);
  for (auto _ : st) benchmark::DoNotOptimize(entanglement_contour(g, block));
}
BENCHMARK(BM_Contour)->Arg(32)->Arg(64)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_QuasiParticleEntropy(benchmark::State& st) {
  const CorrelationState s = quenched(512, 0.0);
  const ProductionSpectrum sp = bogoliubov_spectrum(s, instantaneous_reference(s, 1.0));
  const Dispersion d = dispersion_and_velocity(s.spec(), -1.0, 0.0, 0.0);
  const QPInput in = make_qp_input(sp, d, 128.0);
  double eta = 0.0;
  for (auto _ : st) {
    benchmark::DoNotOptimize(qp_entropy(in, eta));
    eta = eta > 200.0 ? 0.0 : eta + 0.37;
  }
}
BENCHMARK(BM_QuasiParticleEntropy);

}  // namespace

BENCHMARK_MAIN();
