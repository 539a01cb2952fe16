#include <doctest.h>

#include <stdexcept>

#include <sstream>
#include <string>
#include <vector>

#include "s3sim/event_queue.hpp"
#include "s3sim/rng.hpp"

using namespace s3sim;

TEST_CASE("event at the current instant executes") {
    EventQueue q;
    int fired = 0;
    q.schedule(SimTime{0}, [&] { ++fired; });
    q.run_until(SimTime{0});
    CHECK(fired == 1);
    CHECK(q.now() == SimTime{0});
}

TEST_CASE("simultaneous events run in insertion order") {
    EventQueue q;
    std::vector<int> order;
    q.schedule(time_ns(100), [&] { order.push_back(1); });
    q.schedule(time_ns(100), [&] { order.push_back(2); });
    q.run_until(time_ns(100));
    CHECK(order == std::vector<int>{1, 2});
}

TEST_CASE("scheduling in the past is a contract violation") {
    EventQueue q;
    q.schedule(time_ns(10), [] {});
    q.run_until(time_ns(10));
    CHECK_THROWS_AS(q.schedule(time_ns(5), [] {}), std::logic_error);
}

TEST_CASE("run_until with an empty queue advances the clock") {
    EventQueue q;
    const SimTime end = q.run_until(SimTime{} + seconds(1));
    CHECK(end == SimTime{} + seconds(1));
    CHECK(q.processed_count() == 0);
}

TEST_CASE("run_until fires only events due by the deadline") {
    EventQueue q;
    int fired = 0;
    q.schedule(SimTime{} + microseconds(1), [&] { ++fired; });
    q.schedule(SimTime{} + microseconds(2), [&] { ++fired; });
    q.schedule(SimTime{} + microseconds(3), [&] { ++fired; });
    q.run_until(SimTime{} + microseconds(2));
    CHECK(fired == 2);
    q.run_until(SimTime{} + microseconds(3));
    CHECK(fired == 3);
}

TEST_CASE("cancel semantics") {
    EventQueue q;
    int fired = 0;
    auto pending = q.schedule(time_ns(50), [&] { ++fired; });
    auto done = q.schedule(time_ns(10), [&] { ++fired; });
    q.run_until(time_ns(20));
    CHECK(fired == 1);
    CHECK(q.cancel(done) == false);   // already fired
    CHECK(q.cancel(pending) == true); // removed before firing
    CHECK(q.cancel(pending) == false);
    q.run_until(time_ns(100));
    CHECK(fired == 1);
}

namespace {

// Random scenario driven twice: schedules chains of events, cancels some,
// and writes everything it does to a log. The oracle is the second run.
std::string scripted_run(std::uint64_t seed) {
    std::ostringstream log;
    EventQueue q;
    RngStream rng(seed, "kernel-oracle");
    std::vector<EventQueue::Handle> handles;

    std::function<void(int)> spawn = [&](int depth) {
        log << "fire@" << q.now().ns << " depth=" << depth << '\n';
        if (depth >= 4) {
            return;
        }
        const int children = static_cast<int>(rng.uniform_i64(0, 3));
        for (int i = 0; i < children; ++i) {
            const SimTime due = q.now() + nanoseconds(rng.uniform_i64(0, 500));
            handles.push_back(q.schedule(due, [&spawn, depth] { spawn(depth + 1); }));
        }
        if (!handles.empty() && rng.bernoulli(0.3)) {
            const auto victim = static_cast<std::size_t>(
                rng.uniform_i64(0, static_cast<std::int64_t>(handles.size()) - 1));
            log << "cancel=" << (q.cancel(handles[victim]) ? 1 : 0) << '\n';
        }
    };

    for (int i = 0; i < 20; ++i) {
        handles.push_back(
            q.schedule(SimTime{rng.uniform_i64(0, 2'000)}, [&spawn] { spawn(0); }));
    }
    q.run_until(time_ns(10'000));
    log << "processed=" << q.processed_count() << " cancelled=" << q.cancelled_count()
        << " pending=" << q.pending() << '\n';
    return log.str();
}

} // namespace

TEST_CASE("same seed twice gives byte-identical event logs") {
    CHECK(scripted_run(7) == scripted_run(7));
    CHECK(scripted_run(7) != scripted_run(8));
}

TEST_CASE("conservation: processed + cancelled + pending == scheduled") {
    EventQueue q;
    RngStream rng(11, "conservation");
    std::vector<EventQueue::Handle> handles;
    for (int i = 0; i < 500; ++i) {
        handles.push_back(q.schedule(SimTime{rng.uniform_i64(0, 10'000)}, [] {}));
    }
    int cancelled = 0;
    for (std::size_t i = 0; i < handles.size(); i += 3) {
        cancelled += q.cancel(handles[i]) ? 1 : 0;
    }
    q.run_until(time_ns(10'000));
    CHECK(q.cancelled_count() == static_cast<std::uint64_t>(cancelled));
    CHECK(q.processed_count() + q.cancelled_count() + q.pending() ==
          q.scheduled_count());
    CHECK(q.pending() == 0);
}

TEST_CASE("causality: fire times never decrease") {
    EventQueue q;
    RngStream rng(3, "causality");
    std::vector<std::int64_t> stamps;
    for (int i = 0; i < 200; ++i) {
        const SimTime due{rng.uniform_i64(0, 5'000)};
        q.schedule(due, [&stamps, &q] { stamps.push_back(q.now().ns); });
    }
    q.run_until(time_ns(5'000));
    for (std::size_t i = 1; i < stamps.size(); ++i) {
        CHECK(stamps[i - 1] <= stamps[i]);
    }
}

TEST_CASE("stop ends the loop after the current callback") {
    EventQueue q;
    int fired = 0;
    q.schedule(time_ns(1), [&] {
        ++fired;
        q.stop();
    });
    q.schedule(time_ns(2), [&] { ++fired; });
    q.run_until(time_ns(10));
    CHECK(fired == 1);
    CHECK(q.now() == time_ns(1));
}
