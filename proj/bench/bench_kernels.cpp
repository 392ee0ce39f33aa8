// Serial-vs-parallel comparison for the dense kernels and the scan loops.
// Build target only; not part of the test suite.

#include <benchmark/benchmark.h>

#include <random>

#include "semilab/boundary/generator.hpp"
#include "semilab/boundary/triple.hpp"
#include "semilab/diagnostics/resolvent_scan.hpp"
#include "semilab/numeric/expm.hpp"
#include "semilab/numeric/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using namespace semilab;
using numeric::ComplexMatrix;
using numeric::cplx;

ComplexMatrix random_matrix(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexMatrix a(n, n);
    for (auto& z : a.data()) z = cplx{g(rng), g(rng)};
    return a;
}

void bm_multiply_serial(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_matrix(n, 1);
    const ComplexMatrix b = random_matrix(n, 2);
    for (auto _ : state) {
        ComplexMatrix c = numeric::multiply_serial(a, b);
        benchmark::DoNotOptimize(c.data().data());
    }
}

void bm_multiply_parallel(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const ComplexMatrix a = random_matrix(n, 1);
    const ComplexMatrix b = random_matrix(n, 2);
    for (auto _ : state) {
        ComplexMatrix c = numeric::multiply(a, b);
        benchmark::DoNotOptimize(c.data().data());
    }
}

void bm_expm(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const boundary::BoundaryTriple t = boundary::build_heat_triple(n);
    const ComplexMatrix h = boundary::restrict_generator(t).matrix;
    for (auto _ : state) {
        ComplexMatrix e = numeric::matrix_exponential(h, 0.5);
        benchmark::DoNotOptimize(e.data().data());
    }
}

void bm_resolvent_scan(benchmark::State& state) {
    // scan points parallelize; thread count comes from the benchmark arg
    const auto threads = static_cast<int>(state.range(0));
#ifdef _OPENMP
    const int prev = omp_get_max_threads();
    omp_set_num_threads(threads);
#else
    (void)threads;
#endif
    const boundary::BoundaryTriple t = boundary::build_heat_triple(96);
    const boundary::Generator gen = boundary::restrict_generator(t);
    for (auto _ : state) {
        auto scan = diagnostics::norm_continuity_scan(gen, 1.0, 1e3, 24);
        benchmark::DoNotOptimize(scan.norms.data());
    }
#ifdef _OPENMP
    omp_set_num_threads(prev);
#endif
}

} // namespace

BENCHMARK(bm_multiply_serial)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_multiply_parallel)->Arg(64)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_expm)->Arg(100)->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_resolvent_scan)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
