// Serial reference vs OpenMP particle kernels.
#include <benchmark/benchmark.h>

#include "gempic/coupling.hpp"

using namespace gempic;

namespace {

struct Fixture {
    SequencePair seq = SequencePair::fourier(61, 2.0 * M_PI / 1.25);
    ParticleEnsemble ens = sample_weibel(weibel_case(), 100000, SamplerKind::Hammersley, 1);
    FieldState f = FieldState::zeros(61, 2);
    Fixture()
    {
        for (std::size_t i = 0; i < 61; ++i) {
            f.e1[i] = std::sin(0.1 * i);
            f.e2[i] = std::cos(0.2 * i);
            f.b3[i] = std::sin(0.3 * i);
        }
        f.touch();
    }
};

Fixture& fixture()
{
    static Fixture fx;
    return fx;
}

void BM_DepositCurrent(benchmark::State& st)
{
    auto& fx = fixture();
    const Coupling c(fx.seq, ShapeFn(static_cast<int>(st.range(1)), fx.seq.grid().h),
                     st.range(0) ? Backend::OpenMP : Backend::Serial);
    for (auto _ : st) benchmark::DoNotOptimize(c.deposit_current(fx.ens));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(fx.ens.size()));
}

void BM_KickElectric(benchmark::State& st)
{
    auto& fx = fixture();
    const Coupling c(fx.seq, ShapeFn(static_cast<int>(st.range(1)), fx.seq.grid().h),
                     st.range(0) ? Backend::OpenMP : Backend::Serial);
    CouplingWorkspace ws;
    c.refresh(ws, fx.f);
    ParticleEnsemble e = fx.ens;
    for (auto _ : st) c.kick_electric(e, ws, fx.f, 1e-9, Scheme::Variational);
    st.SetItemsProcessed(st.iterations() * static_cast<long>(fx.ens.size()));
}

void BM_PushStreaming(benchmark::State& st)
{
    auto& fx = fixture();
    const Coupling c(fx.seq, ShapeFn(static_cast<int>(st.range(1)), fx.seq.grid().h),
                     st.range(0) ? Backend::OpenMP : Backend::Serial);
    CouplingWorkspace ws;
    c.refresh(ws, fx.f);
    ParticleEnsemble e = fx.ens;
    for (auto _ : st) benchmark::DoNotOptimize(c.push_streaming(e, ws, fx.f, 1e-3));
    st.SetItemsProcessed(st.iterations() * static_cast<long>(fx.ens.size()));
}

}  // namespace

// args: {backend (0 serial, 1 openmp), shape degree}
BENCHMARK(BM_DepositCurrent)->ArgsProduct({{0, 1}, {1, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_KickElectric)->ArgsProduct({{0, 1}, {1, 3}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PushStreaming)->ArgsProduct({{0, 1}, {1, 3}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
