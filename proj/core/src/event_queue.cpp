#include "s3sim/event_queue.hpp"

#include <stdexcept>
#include <utility>

namespace s3sim {

EventQueue::Handle EventQueue::schedule(SimTime due, Callback fn) {
    if (due < now_) {
        throw std::logic_error("EventQueue::schedule: event due in the past");
    }
    const std::uint64_t seq = next_seq_++;
    queue_.emplace(Key{due.ns, seq}, std::move(fn));
    due_by_id_.emplace(seq, due.ns);
    ++scheduled_;
    return Handle{seq};
}

bool EventQueue::cancel(Handle h) {
    auto it = due_by_id_.find(h.id);
    if (it == due_by_id_.end()) {
        return false;
    }
    queue_.erase(Key{it->second, h.id});
    due_by_id_.erase(it);
    ++cancelled_;
    return true;
}

SimTime EventQueue::run_until(SimTime deadline) {
    stop_requested_ = false;
    while (!queue_.empty()) {
        auto it = queue_.begin();
        if (it->first.due_ns > deadline.ns) {
            break;
        }
        now_ = SimTime{it->first.due_ns};
        Callback fn = std::move(it->second);
        due_by_id_.erase(it->first.seq);
        queue_.erase(it);
        ++processed_;
        fn();
        if (stop_requested_) {
            return now_;
        }
    }
    if (deadline > now_) {
        now_ = deadline;
    }
    return now_;
}

} // namespace s3sim
