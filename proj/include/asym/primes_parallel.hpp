#pragma once

// Segmented sieve with independent segments. A worker that claims a segment
// out of sequence recomputes each sieving prime's start point, so segments can
// be claimed by any worker in any order. Memory: per worker one segment buffer
// and one next[] array, plus the shared sieving primes.

#include <cstdint>
#include <vector>

#include "asym/primes.hpp"

namespace asym::primes {

struct ParallelConfig {
    std::uint64_t n = 0;
    std::uint64_t segsize = kDefaultSegsize;
    unsigned workers = 1;
};

/// Optional bookkeeping filled in by count_parallel.
struct ParallelStats {
    std::vector<std::uint64_t> candidates_per_worker;  // candidates in claimed segments
    std::vector<std::uint64_t> segments_per_worker;
    bool track_segments = false;
    std::vector<std::uint32_t> segment_visits;  // only when track_segments
};

/// First multiple of p at or after max(p*p, bot):
/// max(p^2, bot + ((p - bot mod p) mod p)).
constexpr std::uint64_t segment_start(std::uint64_t p, std::uint64_t bot) noexcept {
    const std::uint64_t aligned = bot + (p - bot % p) % p;
    const std::uint64_t square = p * p;
    return aligned > square ? aligned : square;
}

/// Throws ParameterError for workers == 0 or segsize == 0, Cancelled on deadline.
PrimesReport count_parallel(const ParallelConfig& cfg, const Options& opts = {},
                            ParallelStats* stats = nullptr);

struct SpeedupRow {
    unsigned workers = 0;  // 0 is the sequential Method 5 baseline
    double elapsed_seconds = 0.0;
    std::uint64_t nprimes = 0;
};

/// One baseline row (count_m5) followed by one row per entry of worker_list,
/// each averaged over `repetitions` runs. worker_list must be non-empty and ascending.
std::vector<SpeedupRow> speedup_curve(std::uint64_t n, std::uint64_t segsize,
                                      const std::vector<unsigned>& worker_list,
                                      unsigned repetitions = 3);

}  // namespace asym::primes
