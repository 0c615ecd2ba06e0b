#pragma once

// Prime counting, Methods 0 through 5. Every method counts the primes
// strictly below n and reports how much work it did.

#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "asym/common.hpp"

namespace asym::primes {

enum class Method { M0, M1, M2, M3, M4, M5, Parallel };

std::string_view method_name(Method m) noexcept;   // "M0" ... "M5", "parallel"
std::string_view method_title(Method m) noexcept;  // transcript banner
std::optional<Method> method_from_string(std::string_view s) noexcept;

bool is_sieve(Method m) noexcept;

struct PrimesReport {
    Method method = Method::M0;
    std::uint64_t n = 0;
    std::uint64_t nprimes = 0;
    std::optional<std::uint64_t> last_prime;
    /// Remainder operations (trial-division methods). The d <= c/d guard is not counted.
    std::uint64_t mod_ops = 0;
    /// Eliminations plus survivor tests (sieve methods).
    std::uint64_t sieve_ops = 0;
    std::uint64_t memory_bytes = 0;
    double elapsed_seconds = 0.0;

    // Segmented sieves only.
    std::optional<std::uint64_t> segsize;
    std::optional<std::uint64_t> sqrt_primes;
    std::optional<std::uint64_t> last_sqrt_prime;
    unsigned workers = 1;

    /// The counter that the harness tabulates for this method.
    std::uint64_t op_count() const noexcept { return is_sieve(method) ? sieve_ops : mod_ops; }
};

/// d*d <= c without forming d*d, so it cannot wrap for any 64-bit d and c.
template <typename U>
constexpr bool square_at_most(U d, U c) noexcept {
    return d != 0 && d <= c / d;
}

inline constexpr std::uint64_t kDefaultSegsize = std::uint64_t{1} << 23;

struct SieveConfig {
    std::uint64_t n = 0;
    std::uint64_t segsize = kDefaultSegsize;
};

struct Options {
    Cancellation cancel;
    std::uint64_t memory_cap = kDefaultMemoryCap;
    /// Called after each finished segment with (segments_done, segments_total).
    std::function<void(std::uint64_t, std::uint64_t)> heartbeat;
};

PrimesReport count_m0(std::uint64_t n, const Options& opts = {});
PrimesReport count_m1(std::uint64_t n, const Options& opts = {});
PrimesReport count_m2(std::uint64_t n, const Options& opts = {});
/// Throws OutOfMemoryError if the prime array cannot grow.
PrimesReport count_m3(std::uint64_t n, const Options& opts = {});
/// Throws OutOfMemoryError if n bytes exceed opts.memory_cap.
PrimesReport count_m4(std::uint64_t n, const Options& opts = {});
/// Throws ParameterError for segsize == 0.
PrimesReport count_m5(const SieveConfig& cfg, const Options& opts = {});

/// Byte-per-candidate Sieve of Eratosthenes over [0, n).
struct SieveTable {
    std::vector<std::uint8_t> is_prime;  // size n; entries 0 and 1 are 0
    std::uint64_t nprimes = 0;
    std::uint64_t eliminations = 0;
    std::uint64_t survivor_tests = 0;
};
SieveTable sieve_table(std::uint64_t n, const Options& opts = {});

/// All primes <= limit, by running the plain sieve with bound limit + 1.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const Options& opts = {});

/// Exact mod_ops of Methods 0-3 at n without running the trial-division loops.
/// Prime c costs c-2 (M0, M1), isqrt(c)-1 (M2) or pi(isqrt(c)) (M3) divisions;
/// composite c costs c-2 (M0), spf(c)-1 (M1, M2) or pi(spf(c)) (M3).
/// Needs about 5n bytes. Throws ParameterError for sieve methods.
std::uint64_t exact_mod_ops(Method m, std::uint64_t n);

}  // namespace asym::primes
