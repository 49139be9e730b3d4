// Microbenchmarks for the hot paths: packet evaluation, surface flux,
// quadrature-rule construction, trajectory stepping, and ensemble sampling.
//
// Run with e.g.
//   ./fluxlab_bench --benchmark_min_time=0.2
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "fluxlab/bohm.hpp"
#include "fluxlab/rng.hpp"
#include "fluxlab/conescan.hpp"
#include "fluxlab/flux.hpp"
#include "fluxlab/geometry.hpp"
#include "fluxlab/quadrature.hpp"
#include "fluxlab/wavepacket.hpp"

namespace {

using namespace fluxlab;

WavePacket one_packet() {
    GaussianComponent g;
    g.width = 1.0;
    g.wavevector = {0.0, 0.0, 2.0};
    return WavePacket({g});
}

WavePacket two_packets() {
    GaussianComponent g1;
    g1.width = 1.0;
    g1.wavevector = {0.0, 0.0, 2.0};
    GaussianComponent g2;
    g2.width = 0.7;
    g2.center = {1.0, 0.0, 0.0};
    g2.wavevector = {1.5, 0.0, 1.5};
    g2.amplitude = {0.6, 0.3};
    return WavePacket({g1, g2}).normalized();
}

void BM_PacketValue(benchmark::State& state) {
    const WavePacket psi = two_packets();
    const GaussianSum at_t = psi.at(3.0);
    Vec3 x{1.0, -2.0, 5.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(at_t.value(x));
        x.x += 1e-9;  // defeat value caching across iterations
    }
}
BENCHMARK(BM_PacketValue);

void BM_PacketValueAndGradient(benchmark::State& state) {
    const WavePacket psi = two_packets();
    const GaussianSum at_t = psi.at(3.0);
    Vec3 x{1.0, -2.0, 5.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(at_t.value_and_gradient(x));
        x.x += 1e-9;
    }
}
BENCHMARK(BM_PacketValueAndGradient);

void BM_FluxVector(benchmark::State& state) {
    const WavePacket psi = two_packets();
    const GaussianSum at_t = psi.at(5.0);
    Vec3 x{0.5, 0.5, 9.0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(flux_vector(at_t, x));
        x.y += 1e-9;
    }
}
BENCHMARK(BM_FluxVector);

void BM_CapRuleConstruction(benchmark::State& state) {
    const SphereCap cap = make_cap(20.0, make_cone({0, 0, 1}, 0.5));
    const int order = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(cap_quadrature(cap, order));
    }
}
BENCHMARK(BM_CapRuleConstruction)->Arg(16)->Arg(48)->Arg(128);

void BM_SurfaceFlux(benchmark::State& state) {
    const WavePacket psi = two_packets();
    const SphereCap cap = make_cap(20.0, make_cone({0, 0, 1}, 0.5));
    const int order = static_cast<int>(state.range(0));
    double t = 9.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(surface_flux(psi, cap, t, order));
        t += 1e-9;
    }
}
BENCHMARK(BM_SurfaceFlux)->Arg(16)->Arg(48);

void BM_MomentumConeProbability(benchmark::State& state) {
    const WavePacket psi = two_packets();
    const Cone cone = make_cone({0, 0, 1}, 0.5);
    for (auto _ : state) {
        benchmark::DoNotOptimize(momentum_cone_probability(psi, cone, 32));
    }
}
BENCHMARK(BM_MomentumConeProbability);

void BM_TrajectoryCrossing(benchmark::State& state) {
    const WavePacket psi = one_packet();
    std::int64_t idx = 0;
    for (auto _ : state) {
        CounterRng rng = CounterRng::substream(12345, static_cast<std::uint64_t>(idx++));
        const Vec3 x0{0.3 * rng.next_normal(), 0.3 * rng.next_normal(),
                      0.3 * rng.next_normal()};
        benchmark::DoNotOptimize(trace_crossings(psi, x0, 10.0, 30.0, {}));
    }
}
BENCHMARK(BM_TrajectoryCrossing);

void BM_SampleInitial(benchmark::State& state) {
    const WavePacket psi = two_packets();
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_initial(psi, 256, 777));
    }
}
BENCHMARK(BM_SampleInitial);

}  // namespace

BENCHMARK_MAIN();
