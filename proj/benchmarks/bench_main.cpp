#include <benchmark/benchmark.h>

#include <cmath>

#include "cavitycool/coefficients.hpp"
#include "cavitycool/langevin.hpp"
#include "cavitycool/memory.hpp"

using namespace cavitycool;

namespace {

const ModeGeometry cos_mode = PlaneStanding{1.0, Parity::cos};

void BM_memory_quadrature(benchmark::State& st) {
    const double tol = std::pow(10.0, -static_cast<double>(st.range(0)));
    double x = 0.1;
    for (auto _ : st) {
        auto r = memory_integral(MemoryQuery{ModeChannel{cos_mode, 1.0, 0.577, 0.1}, cos_mode, x, 250.0, 500.0}, tol);
        benchmark::DoNotOptimize(r);
        x += 1e-3;
    }
}
BENCHMARK(BM_memory_quadrature)->Arg(8)->Arg(11)->Arg(13);

void BM_memory_closed(benchmark::State& st) {
    double x = 0.1;
    for (auto _ : st) {
        auto r = memory_integral_fp_closed(x, 250.0, 500.0, 1.0, 0.577);
        benchmark::DoNotOptimize(r);
        x += 1e-3;
    }
}
BENCHMARK(BM_memory_closed);

void BM_local_sde(benchmark::State& st) {
    SimulationConfig cfg;
    cfg.mass = 500.0;
    cfg.pump = ModeChannel{cos_mode, 1.0, 0.577, 0.1};
    cfg.alpha = 1.0;
    double x = 0.1;
    for (auto _ : st) {
        auto s = assemble_local_sde(x, 50.0, cfg);
        benchmark::DoNotOptimize(s);
        x += 1e-3;
    }
}
BENCHMARK(BM_local_sde);

void BM_averaged_force(benchmark::State& st) {
    double kv = 0.01;
    for (auto _ : st) {
        auto c = fp_averaged(kv, 1.0, 0.577, 0.1);
        benchmark::DoNotOptimize(c);
        kv += 1e-4;
    }
}
BENCHMARK(BM_averaged_force);

}  // namespace
BENCHMARK_MAIN();
