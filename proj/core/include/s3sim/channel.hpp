#pragma once

#include <string>

#include "s3sim/rng.hpp"
#include "s3sim/time.hpp"

namespace s3sim {

enum class MessageKind { StartControl, Checkpoint, EndControl, IdleHeartbeat };

/// Forensics-only tag. The monitor never reads it; it exists so the event
/// log can distinguish replayed traffic from the real task's messages.
enum class MessageOrigin { Legitimate, Injected };

struct TimingMessage {
    MessageKind kind{MessageKind::StartControl};
    SimTime send_time{};
    SimTime arrival_time{};
    MessageOrigin origin{MessageOrigin::Legitimate};
};

struct ChannelModel {
    Duration base_delay{nanoseconds(200)};
    Duration jitter_bound{nanoseconds(600)}; // hard upper bound, inclusive
    Duration sender_overhead{nanoseconds(50)}; // CPU stall per message
};

/// Timing-message path from the CPU to the trusted monitor. The sender is
/// stalled only for sender_overhead; propagation adds base_delay plus a
/// uniform draw in [0, jitter_bound]. Deliveries are in-order: an arrival
/// is clamped to be no earlier than the previous one.
class Channel {
public:
    Channel(const ChannelModel& model, RngStream rng);

    struct SendResult {
        SimTime cpu_resume;
        TimingMessage message;
    };

    SendResult send(MessageKind kind, SimTime now,
                    MessageOrigin origin = MessageOrigin::Legitimate);

    const ChannelModel& model() const { return model_; }

private:
    ChannelModel model_;
    RngStream rng_;
    SimTime last_arrival_{};
};

std::string to_string(MessageKind kind);
std::string to_string(MessageOrigin origin);

} // namespace s3sim
