#pragma once

// Counting repeated m-substrings: the number of positions i >= 1 whose
// m-substring also starts at some earlier position j < i.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "asym/common.hpp"
#include "asym/text.hpp"

namespace asym::repeats {

enum class Method { R0, R1, R2, R3 };

std::string_view method_name(Method m) noexcept;   // "R0" ... "R3"
std::string_view method_title(Method m) noexcept;
std::optional<Method> method_from_string(std::string_view s) noexcept;

struct RepeatsReport {
    Method method = Method::R0;
    std::uint64_t n = 0;
    std::uint64_t m = 0;
    std::uint64_t nrepeats = 0;
    std::uint64_t char_cmps = 0;
    std::uint64_t memory_bytes = 0;
    double elapsed_seconds = 0.0;
    std::optional<std::uint64_t> pivot_seed;  // R3
    std::string source;                       // Text::describe() of the input
};

/// Start positions 0..n-m, ordered by their m-prefixes. Ties are in no particular order.
struct SuffixIndex {
    std::vector<std::uint64_t> entries;
};

/// One three-way partition step of the ternary quicksort, reported before recursing.
/// range is S[lo, hi) after reordering: [lo, eq) < pivot, [eq, fg) == pivot, [fg, hi) > pivot
/// on the byte at offset depth.
struct PartitionStep {
    std::span<const std::uint64_t> range;
    std::uint64_t lo, eq, fg, hi;
    std::uint64_t depth;
    unsigned char pivot;
};

inline constexpr std::uint64_t kDefaultPivotSeed = 0x5eed5eedULL;

struct Options {
    Cancellation cancel;
    std::uint64_t memory_cap = kDefaultMemoryCap;
    std::uint64_t pivot_seed = kDefaultPivotSeed;
    std::function<void(const PartitionStep&)> on_partition;  // test hook, R3 only
};

// All of these throw ParameterError unless 1 <= m <= n.
RepeatsReport count_r0(const Text& t, std::uint64_t m, const Options& opts = {});
RepeatsReport count_r1(const Text& t, std::uint64_t m, const Options& opts = {});
/// Throws OutOfMemoryError if the index does not fit.
RepeatsReport count_r2(const Text& t, std::uint64_t m, const Options& opts = {});
RepeatsReport count_r3(const Text& t, std::uint64_t m, const Options& opts = {});

RepeatsReport count_repeats(Method method, const Text& t, std::uint64_t m, const Options& opts = {});

/// Sorts positions by m-prefix with a comparison sort; the comparator reads at most m bytes.
/// Adds the bytes it compared to *char_cmps when given.
SuffixIndex build_suffix_index(const Text& t, std::uint64_t m, const Options& opts = {},
                               std::uint64_t* char_cmps = nullptr);

/// Index memory for n-m+1 eight-byte positions.
constexpr std::uint64_t index_bytes(std::uint64_t n, std::uint64_t m) noexcept {
    return 8 * (n - m + 1);
}

}  // namespace asym::repeats
