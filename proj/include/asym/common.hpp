#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace asym {

/// Bad argument to a library operation (m = 0, segsize = 0, workers = 0, ...).
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An allocation was refused (over the configured cap) or failed outright.
class OutOfMemoryError : public std::runtime_error {
public:
    OutOfMemoryError(std::string what, std::uint64_t requested_bytes);
    std::uint64_t requested_bytes() const noexcept { return requested_; }

private:
    std::uint64_t requested_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown from inside a counting loop when its deadline has passed.
class Cancelled : public std::runtime_error {
public:
    Cancelled() : std::runtime_error("operation cancelled: time budget exhausted") {}
};

/// Cooperative cancellation. Long loops call poll() roughly every
/// kPollInterval units of work; a default-constructed token never expires.
class Cancellation {
public:
    using Clock = std::chrono::steady_clock;
    static constexpr std::uint64_t kPollInterval = std::uint64_t{1} << 20;

    Cancellation() = default;
    static Cancellation after(double seconds);

    bool armed() const noexcept { return armed_; }
    bool expired() const noexcept { return armed_ && Clock::now() >= deadline_; }
    void poll() const {
        if (expired()) throw Cancelled{};
    }

private:
    bool armed_ = false;
    Clock::time_point deadline_{};
};

/// Polls a Cancellation once per kPollInterval units of work.
class PollGate {
public:
    explicit PollGate(const Cancellation& cancel) : cancel_(cancel) {}
    void tick(std::uint64_t work_done) {
        if (work_done >= next_) {
            cancel_.poll();
            next_ = work_done + Cancellation::kPollInterval;
        }
    }

private:
    const Cancellation& cancel_;
    std::uint64_t next_ = Cancellation::kPollInterval;
};

class Stopwatch {
public:
    using Clock = std::chrono::steady_clock;
    Stopwatch() : start_(Clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(Clock::now() - start_).count();
    }

private:
    Clock::time_point start_;
};

/// Default cap on any single sieve or index allocation.
inline constexpr std::uint64_t kDefaultMemoryCap = std::uint64_t{4} << 30;

/// floor(sqrt(n)), exact for every 64-bit n.
std::uint64_t isqrt(std::uint64_t n) noexcept;

/// Parses a non-negative count: "10000000", "1e12", "2.5e3", "1_000_000".
/// Rejects commas, signs, fractions that do not land on an integer, and overflow.
std::uint64_t parse_count(std::string_view text);

}  // namespace asym
