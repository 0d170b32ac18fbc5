#include <benchmark/benchmark.h>

#include "alloymsa/configuration.hpp"
#include "alloymsa/hamiltonian.hpp"
#include "alloymsa/parallel.hpp"
#include "alloymsa/rng.hpp"
#include "alloymsa/spectral.hpp"

using namespace alloymsa;

namespace {

// lowest Dirichlet eigenvalue per trial on a 1D box, the typical MC workload
void trials(benchmark::State& state, Execution ex) {
    const SingleSitePotential u(1, {{LatticePoint{0}, 1.0}, {LatticePoint{1}, -0.4}}, 1.0, 0.9);
    const DisorderModel model = DisorderModel::uniform(0, 1);
    const double l = static_cast<double>(state.range(0));
    const Box box(LatticePoint(1), l);
    const Box reach(LatticePoint(1), l + 2);
    for (auto _ : state) {
        auto out = run_trials<double>(
            64,
            [&](std::size_t t) {
                Rng rng(trial_seed(7, t));
                auto cfg = sample_configuration(model, reach, rng);
                return eigenvalues(restrict_hamiltonian(u, cfg, box, BoundaryKind::dirichlet_truncation))[0];
            },
            ex);
        benchmark::DoNotOptimize(out.data());
    }
}

void BM_TrialsSerial(benchmark::State& s) { trials(s, Execution::serial); }
void BM_TrialsParallel(benchmark::State& s) { trials(s, Execution::parallel); }

}  // namespace

BENCHMARK(BM_TrialsSerial)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialsParallel)->Arg(10)->Arg(40)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
