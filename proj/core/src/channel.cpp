#include "s3sim/channel.hpp"

#include <stdexcept>
#include <utility>

namespace s3sim {

Channel::Channel(const ChannelModel& model, RngStream rng)
    : model_(model), rng_(std::move(rng)) {
    if (model_.base_delay.ns < 0 || model_.jitter_bound.ns < 0 ||
        model_.sender_overhead.ns < 0) {
        throw std::invalid_argument("ChannelModel: delays must be >= 0");
    }
}

Channel::SendResult Channel::send(MessageKind kind, SimTime now,
                                  MessageOrigin origin) {
    const Duration jitter{model_.jitter_bound.ns > 0
                              ? rng_.uniform_i64(0, model_.jitter_bound.ns)
                              : 0};
    SimTime arrival = now + model_.base_delay + jitter;
    if (arrival < last_arrival_) {
        arrival = last_arrival_; // FIFO: the interconnect preserves order
    }
    last_arrival_ = arrival;
    return SendResult{now + model_.sender_overhead,
                      TimingMessage{kind, now, arrival, origin}};
}

std::string to_string(MessageKind kind) {
    switch (kind) {
    case MessageKind::StartControl: return "start_control";
    case MessageKind::Checkpoint: return "checkpoint";
    case MessageKind::EndControl: return "end_control";
    case MessageKind::IdleHeartbeat: return "idle_heartbeat";
    }
    return "?";
}

std::string to_string(MessageOrigin origin) {
    return origin == MessageOrigin::Legitimate ? "legitimate" : "injected";
}

} // namespace s3sim
