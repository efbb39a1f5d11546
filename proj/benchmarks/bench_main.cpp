#include <benchmark/benchmark.h>

#include "bds/channel.hpp"
#include "bds/events.hpp"
#include "bds/kernel.hpp"
#include "bds/mobility.hpp"
#include "bds/protocol.hpp"

namespace {

void BM_EventQueuePushPop(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    bds::RandomStream rng(1);
    std::vector<double> times(n);
    for (auto& t : times) t = rng.uniform(0.0, 1e6);
    for (auto _ : state) {
        bds::EventQueue q;
        for (double t : times) q.push(t, bds::EventKind::BurstArrival, 0);
        while (!q.empty()) benchmark::DoNotOptimize(q.pop());
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_EventQueuePushPop)->Arg(1 << 10)->Arg(1 << 16);

void BM_PathLossC2(benchmark::State& state) {
    double d = 10.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bds::pl_winner_c2(d, 25.0, 2.0));
        d = d < 900.0 ? d + 1.0 : 10.0;
    }
}
BENCHMARK(BM_PathLossC2);

void BM_BurstEnergy(benchmark::State& state) {
    const bds::PowerParams p = bds::ScenarioConfig{}.power_params();
    double pl = 60.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bds::burst_energy_j(pl, 7800, p, bds::LinkType::Cellular));
        pl = pl < 140.0 ? pl + 0.5 : 60.0;
    }
}
BENCHMARK(BM_BurstEnergy);

void BM_PositionAtReflecting(benchmark::State& state) {
    // Long fast walk near the boundary: several reflections per query.
    const bds::Segment seg{{480, 50}, 0.0, bds::SegmentKind::Walk, 0.3, 3.0, 300.0};
    double t = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(bds::position_at(seg, t, 500.0));
        t = t < 299.0 ? t + 0.1 : 0.0;
    }
}
BENCHMARK(BM_PositionAtReflecting);

void BM_Replication(benchmark::State& state) {
    bds::ScenarioConfig cfg;
    cfg.n_ues = static_cast<std::uint32_t>(state.range(0));
    cfg.sim_end_s = 2 * 3600.0;
    cfg.seed = 11;
    for (auto _ : state) {
        bds::SimState sim(cfg);
        benchmark::DoNotOptimize(sim.run());
    }
}
BENCHMARK(BM_Replication)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
