#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace s3sim {

/// Deterministic random stream: xoshiro256** seeded from a 64-bit seed and a
/// stream label. The same (seed, label) pair always yields the same draw
/// sequence, on every platform; distinct labels give statistically
/// independent streams. No libstdc++ distribution objects are used anywhere
/// so that replays are bit-stable across toolchains.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label);

    std::uint64_t next_u64();

    /// Uniform in [0, 1), 53-bit resolution.
    double next_double();

    /// Uniform integer in [lo, hi], both ends inclusive. Requires lo <= hi.
    std::int64_t uniform_i64(std::int64_t lo, std::int64_t hi);

    /// True with probability p (p <= 0 never, p >= 1 always).
    bool bernoulli(double p);

    std::uint64_t seed() const { return seed_; }
    const std::string& label() const { return label_; }

private:
    std::uint64_t bounded(std::uint64_t n); // uniform in [0, n), n > 0

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t seed_{0};
    std::string label_;
};

} // namespace s3sim
