#pragma once

#include <compare>
#include <cstdint>

namespace s3sim {

/// Span of virtual time in integer nanoseconds. Signed so that differences
/// and guard subtractions are well defined; negative durations are legal as
/// intermediate values but never as event spacings.
struct Duration {
    std::int64_t ns{0};

    constexpr auto operator<=>(const Duration&) const = default;

    constexpr Duration operator+(Duration o) const { return {ns + o.ns}; }
    constexpr Duration operator-(Duration o) const { return {ns - o.ns}; }
    constexpr Duration operator-() const { return {-ns}; }
    constexpr Duration operator*(std::int64_t k) const { return {ns * k}; }
    constexpr Duration operator/(std::int64_t k) const { return {ns / k}; }
    constexpr Duration& operator+=(Duration o) {
        ns += o.ns;
        return *this;
    }
    constexpr Duration& operator-=(Duration o) {
        ns -= o.ns;
        return *this;
    }

    constexpr double seconds() const { return static_cast<double>(ns) * 1e-9; }
};

/// Instant of virtual time: nanoseconds since simulation start.
/// The simulation clock never runs backwards.
struct SimTime {
    std::int64_t ns{0};

    constexpr auto operator<=>(const SimTime&) const = default;

    constexpr SimTime operator+(Duration d) const { return {ns + d.ns}; }
    constexpr SimTime operator-(Duration d) const { return {ns - d.ns}; }
    constexpr Duration operator-(SimTime o) const { return {ns - o.ns}; }
    constexpr SimTime& operator+=(Duration d) {
        ns += d.ns;
        return *this;
    }

    constexpr double seconds() const { return static_cast<double>(ns) * 1e-9; }
};

constexpr Duration nanoseconds(std::int64_t v) { return {v}; }
constexpr Duration microseconds(std::int64_t v) { return {v * 1'000}; }
constexpr Duration milliseconds(std::int64_t v) { return {v * 1'000'000}; }
constexpr Duration seconds(std::int64_t v) { return {v * 1'000'000'000}; }

constexpr SimTime time_ns(std::int64_t v) { return {v}; }

} // namespace s3sim
