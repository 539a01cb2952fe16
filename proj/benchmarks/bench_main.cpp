#include <benchmark/benchmark.h>

#include <sstream>

#include "s3sim/cartpole.hpp"
#include "s3sim/event_queue.hpp"
#include "s3sim/exec_model.hpp"
#include "s3sim/monitor_driver.hpp"
#include "s3sim/rng.hpp"
#include "s3sim/scenario.hpp"
#include "s3sim/simulation.hpp"

namespace {

using namespace s3sim;

void BM_EventQueueChurn(benchmark::State& state) {
    for (auto _ : state) {
        EventQueue q;
        std::int64_t fired = 0;
        for (int i = 0; i < 1'000; ++i) {
            q.schedule(time_ns(i * 7 % 997), [&fired] { ++fired; });
        }
        q.run_until(time_ns(1'000));
        benchmark::DoNotOptimize(fired);
    }
    state.SetItemsProcessed(state.iterations() * 1'000);
}
BENCHMARK(BM_EventQueueChurn);

void BM_Rk4Step(benchmark::State& state) {
    const PlantParams p;
    PlantState s{0.01, 0.0, 0.02, 0.0};
    for (auto _ : state) {
        s = step_dynamics(s, ActuationCmd{1.0}, milliseconds(1), p);
        benchmark::DoNotOptimize(s);
        if (!s.finite() || plant_destroyed(s, p)) {
            s = PlantState{0.01, 0.0, 0.02, 0.0};
        }
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Rk4Step);

void BM_ExecDraw(benchmark::State& state) {
    const ExecTimeDistribution dist;
    RngStream rng(1, "bench");
    std::int64_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(draw_exec_time(i++, dist, rng));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ExecDraw);

void BM_MonitorIteration(benchmark::State& state) {
    const FsmConfig cfg = single_leg_config(
        nanoseconds(4'600), nanoseconds(1'100), microseconds(990),
        microseconds(20), milliseconds(20) - microseconds(5), microseconds(10));
    for (auto _ : state) {
        state.PauseTiming();
        MonitorDriver d(cfg);
        SimTime t{};
        state.ResumeTiming();
        for (int k = 0; k < 50; ++k) {
            d.on_arrival(t, MessageKind::StartControl);
            d.on_arrival(t + nanoseconds(5'000), MessageKind::EndControl);
            for (int b = 1; b <= 19; ++b) {
                d.on_arrival(t + milliseconds(b), MessageKind::IdleHeartbeat);
            }
            t += milliseconds(20);
        }
        benchmark::DoNotOptimize(d.verdict());
    }
    state.SetItemsProcessed(state.iterations() * 50);
}
BENCHMARK(BM_MonitorIteration);

void BM_FullScenarioSecond(benchmark::State& state) {
    Scenario s = parse_scenario(R"({
        "horizon_ns": 1000000000,
        "exec": {"cold_start_iterations": 0},
        "fsm": {"derive": {}}
    })");
    for (auto _ : state) {
        std::ostringstream events;
        std::ostringstream trace;
        benchmark::DoNotOptimize(run_scenario(s, events, trace));
    }
    state.SetItemsProcessed(state.iterations() * 50); // control iterations
}
BENCHMARK(BM_FullScenarioSecond)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
