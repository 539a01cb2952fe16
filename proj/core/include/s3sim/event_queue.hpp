#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <unordered_map>

#include "s3sim/time.hpp"

namespace s3sim {

/// Single-threaded discrete-event core: a virtual clock plus an ordered
/// queue of callbacks. Events fire in (due time, insertion sequence) order,
/// so simultaneous events run FIFO and every run of the same schedule is
/// reproducible. Scheduling into the past is a contract violation and
/// throws immediately.
class EventQueue {
public:
    using Callback = std::function<void()>;

    struct Handle {
        std::uint64_t id{0};
        explicit operator bool() const { return id != 0; }
    };

    SimTime now() const { return now_; }

    Handle schedule(SimTime due, Callback fn);

    /// Removes a pending event. Returns true if the event existed and had
    /// neither fired nor been cancelled; false in every other case, so a
    /// double cancel is a harmless no-op that reports false.
    bool cancel(Handle h);

    /// Processes every event with due <= deadline in (due, sequence) order,
    /// then advances the clock to the deadline. Returns the clock. A stop()
    /// issued from inside a callback ends the loop after that callback.
    SimTime run_until(SimTime deadline);

    /// Request that the current run_until return early.
    void stop() { stop_requested_ = true; }

    bool empty() const { return queue_.empty(); }
    std::size_t pending() const { return queue_.size(); }
    std::uint64_t processed_count() const { return processed_; }
    std::uint64_t cancelled_count() const { return cancelled_; }
    std::uint64_t scheduled_count() const { return scheduled_; }

private:
    struct Key {
        std::int64_t due_ns;
        std::uint64_t seq;
        auto operator<=>(const Key&) const = default;
    };

    std::map<Key, Callback> queue_;
    std::unordered_map<std::uint64_t, std::int64_t> due_by_id_;
    SimTime now_{};
    std::uint64_t next_seq_{1};
    std::uint64_t processed_{0};
    std::uint64_t cancelled_{0};
    std::uint64_t scheduled_{0};
    bool stop_requested_{false};
};

} // namespace s3sim
