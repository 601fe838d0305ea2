#include <benchmark/benchmark.h>

#include <numbers>
#include <vector>

#include "torus_pusher/config.hpp"
#include "torus_pusher/ensemble.hpp"

using namespace torus;

namespace {

std::vector<AugmentedState> make_ensemble(std::size_t n, const FieldModel& fm) {
  std::vector<AugmentedState> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / static_cast<double>(n);
    const ToroidalPoint p{0.8 + 0.6 * s, 2.0 * std::numbers::pi * s, 0.3};
    out.push_back(augmented_from_physical({toroidal_to_cartesian(p, fm.torus()), {10.0, 10.0 - 5.0 * s, 5.0}}, fm));
  }
  return out;
}

std::vector<PhysicalState> make_cartesian(std::size_t n, const FieldModel& fm) {
  std::vector<PhysicalState> out;
  for (const AugmentedState& a : make_ensemble(n, fm)) {
    out.push_back(physical_from_augmented(a, fm));
  }
  return out;
}

const ScrewField& field() {
  static const ScrewField fm({}, {});
  return fm;
}

void BM_Imex2Serial(benchmark::State& state) {
  const auto base = make_ensemble(static_cast<std::size_t>(state.range(0)), field());
  for (auto _ : state) {
    auto particles = base;
    benchmark::DoNotOptimize(push_ensemble_serial(particles, Scheme::imex2, 0.0, 1e-2, 20, 1e-3, field()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

void BM_Imex2Parallel(benchmark::State& state) {
  const auto base = make_ensemble(static_cast<std::size_t>(state.range(0)), field());
  for (auto _ : state) {
    auto particles = base;
    benchmark::DoNotOptimize(push_ensemble(particles, Scheme::imex2, 0.0, 1e-2, 20, 1e-3, field()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

void BM_BorisSerial(benchmark::State& state) {
  const auto base = make_cartesian(static_cast<std::size_t>(state.range(0)), field());
  for (auto _ : state) {
    auto particles = base;
    benchmark::DoNotOptimize(push_ensemble_serial(particles, 1e-4, 20, 1e-3, field()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

void BM_BorisParallel(benchmark::State& state) {
  const auto base = make_cartesian(static_cast<std::size_t>(state.range(0)), field());
  for (auto _ : state) {
    auto particles = base;
    benchmark::DoNotOptimize(push_ensemble(particles, 1e-4, 20, 1e-3, field()));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 20);
}

}  // namespace

BENCHMARK(BM_Imex2Serial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_Imex2Parallel)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_BorisSerial)->Arg(1 << 10)->Arg(1 << 14);
BENCHMARK(BM_BorisParallel)->Arg(1 << 10)->Arg(1 << 14);

int main(int argc, char** argv) {
  configure_threads();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
