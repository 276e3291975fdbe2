#include <benchmark/benchmark.h>

#include "sinkwalk/attractor.hpp"
#include "sinkwalk/dynamics.hpp"
#include "sinkwalk/operators.hpp"
#include "sinkwalk/oracle.hpp"

namespace {

using namespace sinkwalk;

// ring of n vertices, loops on every other vertex, a pendant sink every
// eighth vertex; arc count grows linearly with n
SymmetricDigraph ring_with_sinks(int n, std::vector<VertexId>& sinks) {
    std::vector<std::pair<VertexId, VertexId>> edges;
    std::vector<VertexId> loops;
    for (VertexId v = 0; v < n; ++v) {
        edges.emplace_back(v, (v + 1) % n);
        if (v % 2 == 0) loops.push_back(v);
    }
    VertexId next = n;
    sinks.clear();
    for (VertexId v = 0; v < n; v += 8) {
        edges.emplace_back(v, next);
        sinks.push_back(next++);
    }
    return SymmetricDigraph::build(next, edges, loops);
}

void BM_AttractorBasis(benchmark::State& state) {
    std::vector<VertexId> sinks;
    auto g = ring_with_sinks(static_cast<int>(state.range(0)), sinks);
    auto g0 = remove_sinks(g, sinks);
    for (auto _ : state) {
        benchmark::DoNotOptimize(attractor_basis(g0));
    }
}
BENCHMARK(BM_AttractorBasis)->Arg(16)->Arg(48)->Arg(96);

void BM_StepWithSinks(benchmark::State& state) {
    std::vector<VertexId> sinks;
    auto g = ring_with_sinks(static_cast<int>(state.range(0)), sinks);
    auto g0 = remove_sinks(g, sinks);
    ArcVector psi{ArcDomain::internal, ComplexVector::Ones(g0.arc_count())};
    psi.values /= psi.values.norm();
    for (auto _ : state) {
        auto [next, tau] = step_with_sinks(g0, psi);
        benchmark::DoNotOptimize(tau);
        psi = std::move(next);
    }
    state.SetItemsProcessed(state.iterations() * g0.arc_count());
}
BENCHMARK(BM_StepWithSinks)->Arg(16)->Arg(96)->Arg(512);

void BM_NumericSpectrum(benchmark::State& state) {
    std::vector<VertexId> sinks;
    auto g = ring_with_sinks(static_cast<int>(state.range(0)), sinks);
    auto e = build_E(remove_sinks(g, sinks));
    for (auto _ : state) {
        benchmark::DoNotOptimize(numeric_spectrum(e));
    }
}
BENCHMARK(BM_NumericSpectrum)->Arg(16)->Arg(48)->Arg(96);

void BM_SpectralSurvival(benchmark::State& state) {
    std::vector<VertexId> sinks;
    auto g = ring_with_sinks(static_cast<int>(state.range(0)), sinks);
    auto g0 = remove_sinks(g, sinks);
    auto basis = attractor_basis(g0);
    ArcVector phi0{ArcDomain::internal, ComplexVector::Ones(g0.arc_count())};
    phi0.values /= phi0.values.norm();
    for (auto _ : state) {
        benchmark::DoNotOptimize(survival_spectral(basis, phi0));
    }
}
BENCHMARK(BM_SpectralSurvival)->Arg(16)->Arg(48)->Arg(96);

void BM_TailStationaryState(benchmark::State& state) {
    std::vector<VertexId> sinks;
    auto g = ring_with_sinks(static_cast<int>(state.range(0)), sinks);
    auto g0 = remove_sinks(g, sinks);
    std::vector<Complex> alphas(g0.tail_vertices().size());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        alphas[i] = Complex(1.0 / (1.0 + static_cast<double>(i)), 0.25);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(tail_stationary_state(g0, alphas));
    }
}
BENCHMARK(BM_TailStationaryState)->Arg(16)->Arg(48)->Arg(96);

}  // namespace

BENCHMARK_MAIN();
