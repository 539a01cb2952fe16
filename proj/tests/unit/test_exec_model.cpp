#include <doctest.h>

#include <stdexcept>

#include <algorithm>
#include <vector>

#include "s3sim/exec_model.hpp"
#include "s3sim/rng.hpp"

using namespace s3sim;

TEST_CASE("cycle-to-time conversion at 2.67 GHz") {
    const CpuModel cpu;
    // 1590/2.67 = 595.51: rounds to 596 (the accepted band as time).
    CHECK(cycles_to_time(1'590, cpu) == nanoseconds(596));
    // 130/2.67 = 48.69: the per-message issue cost rounds to 49.
    CHECK(cycles_to_time(130, cpu) == nanoseconds(49));
    CHECK(cycles_to_time(0, cpu) == nanoseconds(0));
    CHECK(cycles_to_time(13'070, cpu) == nanoseconds(4'895));
    CHECK(cycles_to_time(14'660, cpu) == nanoseconds(5'491));
    CHECK_THROWS_AS(cycles_to_time(1, CpuModel{0, 130}), std::invalid_argument);
}

TEST_CASE("cold-start iterations draw from the cold band") {
    const ExecTimeDistribution dist;
    RngStream rng(5, "exec");
    for (int i = 0; i < 10; ++i) {
        const Cycles c = draw_exec_time(i, dist, rng);
        CHECK(c >= dist.steady_high);
        CHECK(c <= dist.cold_start_worst);
    }
}

TEST_CASE("steady draws stay inside the band when probabilities are zero") {
    const ExecTimeDistribution dist;
    RngStream rng(5, "exec");
    for (int i = 0; i < 20'000; ++i) {
        const Cycles c = draw_exec_time(dist.cold_start_iterations + i, dist, rng);
        CHECK(c >= 13'070);
        CHECK(c <= 14'660);
    }
}

TEST_CASE("degenerate distribution is constant") {
    ExecTimeDistribution dist;
    dist.steady_low = dist.steady_high = 10'000;
    dist.cold_start_iterations = 0;
    dist.cold_start_worst = 10'000;
    RngStream rng(5, "exec");
    for (int i = 0; i < 100; ++i) {
        CHECK(draw_exec_time(i, dist, rng) == 10'000);
    }
}

TEST_CASE("upper band and spikes inflate draws when enabled") {
    ExecTimeDistribution dist;
    dist.cold_start_iterations = 0;
    dist.upper_band_probability = 1.0;
    RngStream rng(5, "exec");
    for (int i = 0; i < 1'000; ++i) {
        const Cycles c = draw_exec_time(i, dist, rng);
        CHECK(c >= 13'070 + 500);
        CHECK(c <= 14'660 + 900);
    }
}

TEST_CASE("constant dual-loop traces collapse to a single value") {
    const std::vector<Cycles> timed(50, 10'000);
    const std::vector<Cycles> instr(50, 265);
    const ExecutionProfile p = dual_loop_profile(timed, instr, 10);
    CHECK(p.instrumentation_overhead == 265);
    CHECK(p.best == 9'735);
    CHECK(p.worst == 9'735);
    CHECK(p.steady_low == 9'735);
    CHECK(p.steady_high == 9'735);
}

TEST_CASE("synthetic band trace reproduces the 1590-cycle width") {
    RngStream rng(17, "band");
    std::vector<Cycles> timed;
    std::vector<Cycles> instr;
    for (int i = 0; i < 100'000; ++i) {
        timed.push_back(rng.uniform_i64(13'070, 14'660) + rng.uniform_i64(260, 270));
        instr.push_back(rng.uniform_i64(260, 270));
    }
    const ExecutionProfile p = dual_loop_profile(timed, instr, 90'000);
    const Cycles width = p.steady_high - p.steady_low;
    CHECK(width > 1'590 * 0.95);
    CHECK(width < 1'590 * 1.05);
    CHECK(p.instrumentation_overhead >= 260);
    CHECK(p.instrumentation_overhead <= 270);
}

TEST_CASE("profile matches a brute-force recomputation on random traces") {
    RngStream rng(23, "brute");
    for (int round = 0; round < 50; ++round) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_i64(5, 400));
        const std::size_t window =
            static_cast<std::size_t>(rng.uniform_i64(1, static_cast<std::int64_t>(n)));
        std::vector<Cycles> timed, instr;
        for (std::size_t i = 0; i < n; ++i) {
            timed.push_back(rng.uniform_i64(500, 50'000));
            instr.push_back(rng.uniform_i64(100, 400));
        }
        const ExecutionProfile p = dual_loop_profile(timed, instr, window);

        std::vector<Cycles> sorted = instr;
        std::sort(sorted.begin(), sorted.end());
        const Cycles overhead = sorted.size() % 2 == 1
                                    ? sorted[sorted.size() / 2]
                                    : (sorted[sorted.size() / 2 - 1] +
                                       sorted[sorted.size() / 2]) /
                                          2;
        std::vector<Cycles> corrected;
        for (Cycles raw : timed) {
            corrected.push_back(raw - overhead);
        }
        const auto [all_min, all_max] =
            std::minmax_element(corrected.begin(), corrected.end());
        const auto [win_min, win_max] = std::minmax_element(
            corrected.end() - static_cast<std::ptrdiff_t>(window), corrected.end());
        REQUIRE(p.instrumentation_overhead == overhead);
        REQUIRE(p.best == *all_min);
        REQUIRE(p.worst == *all_max);
        REQUIRE(p.steady_low == *win_min);
        REQUIRE(p.steady_high == *win_max);
        REQUIRE(p.ordered());
    }
}

TEST_CASE("dual-loop input validation") {
    const std::vector<Cycles> some(5, 1'000);
    CHECK_THROWS_AS(dual_loop_profile({}, some, 1), std::invalid_argument);
    CHECK_THROWS_AS(dual_loop_profile(some, {}, 1), std::invalid_argument);
    CHECK_THROWS_AS(dual_loop_profile(some, some, 6), std::invalid_argument);
    CHECK_THROWS_AS(dual_loop_profile(some, some, 0), std::invalid_argument);
}

namespace {

ExecutionProfile reference_time_profile() {
    // Steady window chosen so that the measured times are 4.8 us and 5.4 us
    // at 2.67 GHz (12816 and 14418 cycles).
    ExecutionProfile p;
    p.best = 12'816;
    p.steady_low = 12'816;
    p.steady_high = 14'418;
    p.worst = 16'560;
    p.instrumentation_overhead = 265;
    return p;
}

} // namespace

TEST_CASE("guard margins reproduce the reference enforced window") {
    const CpuModel cpu;
    DerivationMargins margins;
    margins.exec_lower_guard = nanoseconds(200);
    margins.exec_upper_guard = nanoseconds(-300);
    const FsmConfig cfg = derive_fsm_params(reference_time_profile(), nanoseconds(600),
                                            margins, cpu, milliseconds(20));
    CHECK(cfg.must_wait_c() == nanoseconds(4'600));
    CHECK(cfg.can_wait_c() == nanoseconds(1'100));
    CHECK(cfg.must_wait_p == milliseconds(20) - microseconds(5));
    CHECK(cfg.can_wait_p == microseconds(10));
    CHECK(cfg.must_wait_i == milliseconds(1) - microseconds(10));
    CHECK(cfg.can_wait_i == microseconds(20));
}

TEST_CASE("degenerate derivation: zero jitter, zero guards") {
    ExecutionProfile p;
    p.best = p.steady_low = p.steady_high = p.worst = 13'350; // exactly 5 us
    DerivationMargins margins;
    margins.exec_lower_guard = nanoseconds(0);
    margins.exec_upper_guard = nanoseconds(0);
    const FsmConfig cfg = derive_fsm_params(p, nanoseconds(0), margins,
                                            CpuModel{}, milliseconds(20));
    CHECK(cfg.must_wait_c() == cycles_to_time(13'350, CpuModel{}));
    CHECK(cfg.can_wait_c() == nanoseconds(0));
}

TEST_CASE("derived window always covers steady-high plus jitter") {
    RngStream rng(31, "derive");
    const CpuModel cpu;
    for (int round = 0; round < 2'000; ++round) {
        ExecutionProfile p;
        p.steady_low = rng.uniform_i64(2'000, 40'000);
        p.steady_high = p.steady_low + rng.uniform_i64(0, 5'000);
        p.best = p.steady_low - rng.uniform_i64(0, 500);
        p.worst = p.steady_high + rng.uniform_i64(0, 5'000);
        DerivationMargins margins;
        margins.exec_lower_guard = nanoseconds(rng.uniform_i64(0, 600));
        margins.exec_upper_guard = nanoseconds(rng.uniform_i64(0, 600));
        const Duration jitter = nanoseconds(rng.uniform_i64(0, 1'000));
        const FsmConfig cfg =
            derive_fsm_params(p, jitter, margins, cpu, milliseconds(20));
        CHECK(cfg.must_wait_c() + cfg.can_wait_c() >=
              cycles_to_time(p.steady_high, cpu) + jitter);
    }
}

TEST_CASE("increasing jitter never shrinks CanWait_C") {
    const CpuModel cpu;
    const DerivationMargins margins;
    Duration previous = nanoseconds(-1);
    for (std::int64_t jitter = 0; jitter <= 2'000; jitter += 100) {
        const FsmConfig cfg = derive_fsm_params(
            reference_time_profile(), nanoseconds(jitter), margins, cpu, milliseconds(20));
        CHECK(cfg.can_wait_c() >= previous);
        previous = cfg.can_wait_c();
    }
}

TEST_CASE("over-wide guards are rejected") {
    DerivationMargins margins;
    margins.exec_lower_guard = milliseconds(1);
    CHECK_THROWS_AS(derive_fsm_params(reference_time_profile(), nanoseconds(0), margins,
                                      CpuModel{}, milliseconds(20)),
                    std::invalid_argument);
}
