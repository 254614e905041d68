#include <benchmark/benchmark.h>

#include <random>

#include "chdbc/diagnostics.hpp"
#include "chdbc/experiments.hpp"
#include "chdbc/scheme.hpp"

using namespace chdbc;

namespace {

ModelParams desk_params(Coupling c) {
    ModelParams p;
    p.epsilon = p.delta = 0.02;
    p.kappa = 1.0;
    p.s1 = p.s2 = 50.0;
    p.coupling = c;
    p.potential = PotentialSpec::double_well();
    return p;
}

SimState random_state(const Grid& g, std::uint64_t seed) {
    InitSpec init;
    init.kind = InitSpec::Kind::RandomUniform;
    return make_initial(init, g, seed);
}

void BM_Assemble(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 0.5, 0.5);
    const ModelParams p = desk_params(Coupling::finite(1.0));
    for (auto _ : state) {
        StepSystem sys(g, p, 1e-4);
        benchmark::DoNotOptimize(sys.matrix().nonzeros());
    }
}
BENCHMARK(BM_Assemble)->Arg(26)->Arg(51)->Arg(101);

void BM_AdvanceGmres(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 0.5, 0.5);
    const ModelParams p = desk_params(Coupling::finite(1.0));
    const StepSystem sys(g, p, 1e-4);
    SolverConfig cfg;
    cfg.rel_tol = 1e-10;
    LinearSolver solver(cfg);
    SimState s = random_state(g, 1);
    for (auto _ : state) {
        s = advance(sys, s, solver);
        benchmark::DoNotOptimize(s.phi.values.data());
    }
    state.counters["gmres_iters_per_step"] =
        benchmark::Counter(static_cast<double>(solver.total_iterations),
                           benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_AdvanceGmres)->Arg(26)->Arg(51)->Arg(101)->Unit(benchmark::kMillisecond);

void BM_MatVec(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 0.5, 0.5);
    const StepSystem sys(g, desk_params(Coupling::finite(1.0)), 1e-4);
    std::vector<double> x(static_cast<size_t>(sys.unknowns()), 0.3);
    std::vector<double> y(x.size());
    for (auto _ : state) {
        sys.matrix().multiply(x, y);
        benchmark::DoNotOptimize(y.data());
    }
}
BENCHMARK(BM_MatVec)->Arg(51)->Arg(101);

void BM_Energy(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    Grid g(n, n, 0.5, 0.5);
    const ModelParams p = desk_params(Coupling::finite(1.0));
    const SimState s = random_state(g, 1);
    for (auto _ : state) benchmark::DoNotOptimize(energy(s, g, p));
}
BENCHMARK(BM_Energy)->Arg(51)->Arg(101);

}  // namespace

BENCHMARK_MAIN();
