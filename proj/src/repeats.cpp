#include "asym/repeats.hpp"

#include <algorithm>
#include <array>
#include <new>
#include <random>
#include <string>

namespace asym::repeats {

namespace {

constexpr std::array<std::string_view, 4> kNames = {"R0", "R1", "R2", "R3"};
constexpr std::array<std::string_view, 4> kTitles = {
    "Repeats 0: Compare every pair in full",
    "Repeats 1: Compare pairs with early exit",
    "Repeats 2: Build suffix array using comparison sort",
    "Repeats 3: Build suffix array using ternary quicksort",
};

void check_params(const Text& t, std::uint64_t m) {
    if (m == 0) throw ParameterError("repeat length m must be at least 1");
    if (m > t.size())
        throw ParameterError("repeat length m=" + std::to_string(m) + " exceeds text size n=" +
                             std::to_string(t.size()));
}

RepeatsReport start_report(Method method, const Text& t, std::uint64_t m) {
    RepeatsReport r;
    r.method = method;
    r.n = t.size();
    r.m = m;
    r.source = t.describe();
    return r;
}

std::vector<std::uint64_t> allocate_index(std::uint64_t n, std::uint64_t m, const Options& opts) {
    const std::uint64_t bytes = index_bytes(n, m);
    if (bytes > opts.memory_cap) {
        throw OutOfMemoryError("suffix index needs " + std::to_string(bytes) + " bytes, over the memory cap of " +
                                   std::to_string(opts.memory_cap),
                               bytes);
    }
    try {
        std::vector<std::uint64_t> s(n - m + 1);
        for (std::uint64_t i = 0; i < s.size(); ++i) s[i] = i;
        return s;
    } catch (const std::bad_alloc&) {
        throw OutOfMemoryError("suffix index allocation of " + std::to_string(bytes) + " bytes failed", bytes);
    }
}

// Compares the m-prefixes at a and b, counting bytes examined.
struct PrefixCompare {
    const unsigned char* text;
    std::uint64_t m;
    std::uint64_t* cmps;

    int compare(std::uint64_t a, std::uint64_t b) const {
        const unsigned char* x = text + a;
        const unsigned char* y = text + b;
        for (std::uint64_t k = 0; k < m; ++k) {
            if (x[k] != y[k]) {
                *cmps += k + 1;
                return x[k] < y[k] ? -1 : 1;
            }
        }
        *cmps += m;
        return 0;
    }
};

}  // namespace

std::string_view method_name(Method m) noexcept { return kNames[static_cast<std::size_t>(m)]; }
std::string_view method_title(Method m) noexcept { return kTitles[static_cast<std::size_t>(m)]; }

std::optional<Method> method_from_string(std::string_view s) noexcept {
    if (s.size() == 2 && (s[0] == 'R' || s[0] == 'r')) s.remove_prefix(1);
    if (s.size() == 1 && s[0] >= '0' && s[0] <= '3') return static_cast<Method>(s[0] - '0');
    return std::nullopt;
}

RepeatsReport count_r0(const Text& t, std::uint64_t m, const Options& opts) {
    check_params(t, m);
    RepeatsReport r = start_report(Method::R0, t, m);
    Stopwatch sw;
    const unsigned char* T = t.bytes().data();
    const std::uint64_t last = t.size() - m;
    PollGate gate(opts.cancel);
    for (std::uint64_t i = 1; i <= last; ++i) {
        unsigned repeat = 0;
        for (std::uint64_t j = 0; j < i; ++j) {
            unsigned match = 1;
            for (std::uint64_t c = 0; c < m; ++c) {
                match &= static_cast<unsigned>(T[j + c] == T[i + c]);
            }
            repeat |= match;
        }
        r.nrepeats += repeat;
        r.char_cmps += i * m;
        gate.tick(r.char_cmps);
    }
    r.elapsed_seconds = sw.seconds();
    return r;
}

RepeatsReport count_r1(const Text& t, std::uint64_t m, const Options& opts) {
    check_params(t, m);
    RepeatsReport r = start_report(Method::R1, t, m);
    Stopwatch sw;
    const unsigned char* T = t.bytes().data();
    const std::uint64_t last = t.size() - m;
    PollGate gate(opts.cancel);
    std::uint64_t cmps = 0;
    for (std::uint64_t i = 1; i <= last; ++i) {
        for (std::uint64_t j = 0; j < i; ++j) {
            bool match = true;
            std::uint64_t c = 0;
            for (; c < m; ++c) {
                if (T[j + c] != T[i + c]) {
                    match = false;
                    ++c;
                    break;
                }
            }
            cmps += c;
            if (match) {
                ++r.nrepeats;
                break;
            }
        }
        gate.tick(cmps);
    }
    r.char_cmps = cmps;
    r.elapsed_seconds = sw.seconds();
    return r;
}

SuffixIndex build_suffix_index(const Text& t, std::uint64_t m, const Options& opts, std::uint64_t* char_cmps) {
    check_params(t, m);
    SuffixIndex index{allocate_index(t.size(), m, opts)};
    std::uint64_t cmps = 0;
    const PrefixCompare cmp{t.bytes().data(), m, &cmps};
    const Cancellation& cancel = opts.cancel;
    std::uint64_t calls = 0;
    // std::sort: introsort, O(n log n) comparisons in the worst case.
    std::sort(index.entries.begin(), index.entries.end(), [&](std::uint64_t a, std::uint64_t b) {
        if ((++calls & (Cancellation::kPollInterval - 1)) == 0) cancel.poll();
        return cmp.compare(a, b) < 0;
    });
    if (char_cmps) *char_cmps += cmps;
    return index;
}

RepeatsReport count_r2(const Text& t, std::uint64_t m, const Options& opts) {
    check_params(t, m);
    RepeatsReport r = start_report(Method::R2, t, m);
    r.memory_bytes = index_bytes(t.size(), m);
    Stopwatch sw;
    const SuffixIndex index = build_suffix_index(t, m, opts, &r.char_cmps);
    const PrefixCompare cmp{t.bytes().data(), m, &r.char_cmps};
    const auto& S = index.entries;
    for (std::size_t i = 1; i < S.size(); ++i) {
        if (cmp.compare(S[i - 1], S[i]) == 0) ++r.nrepeats;
    }
    r.elapsed_seconds = sw.seconds();
    return r;
}

RepeatsReport count_r3(const Text& t, std::uint64_t m, const Options& opts) {
    check_params(t, m);
    RepeatsReport r = start_report(Method::R3, t, m);
    r.memory_bytes = index_bytes(t.size(), m);
    r.pivot_seed = opts.pivot_seed;
    Stopwatch sw;

    std::vector<std::uint64_t> S = allocate_index(t.size(), m, opts);
    const unsigned char* T = t.bytes().data();
    std::mt19937_64 rng(opts.pivot_seed);
    PollGate gate(opts.cancel);

    // Half-open ranges [lo, hi) whose members agree on their first `depth` bytes.
    struct Frame {
        std::uint64_t lo, hi, depth;
    };
    std::vector<Frame> work;
    work.push_back({0, S.size(), 0});
    std::uint64_t cmps = 0;
    std::uint64_t nrepeats = 0;

    while (!work.empty()) {
        const Frame f = work.back();
        work.pop_back();
        const std::uint64_t size = f.hi - f.lo;
        if (size <= 1) continue;
        if (f.depth == m) {
            nrepeats += size - 1;
            continue;
        }

        const std::uint64_t depth = f.depth;
        const unsigned char pivot = T[S[f.lo + rng() % size] + depth];
        std::uint64_t lt = f.lo;
        std::uint64_t i = f.lo;
        std::uint64_t gt = f.hi;
        while (i < gt) {
            const unsigned char ch = T[S[i] + depth];
            if (ch < pivot) {
                std::swap(S[lt++], S[i++]);
            } else if (ch > pivot) {
                std::swap(S[i], S[--gt]);
            } else {
                ++i;
            }
        }
        cmps += size;

        if (opts.on_partition) {
            opts.on_partition(PartitionStep{std::span<const std::uint64_t>(S.data() + f.lo, size), f.lo, lt, gt,
                                            f.hi, depth, pivot});
        }

        work.push_back({gt, f.hi, depth});
        work.push_back({lt, gt, depth + 1});
        work.push_back({f.lo, lt, depth});
        gate.tick(cmps);
    }

    r.nrepeats = nrepeats;
    r.char_cmps = cmps;
    r.elapsed_seconds = sw.seconds();
    return r;
}

RepeatsReport count_repeats(Method method, const Text& t, std::uint64_t m, const Options& opts) {
    switch (method) {
        case Method::R0: return count_r0(t, m, opts);
        case Method::R1: return count_r1(t, m, opts);
        case Method::R2: return count_r2(t, m, opts);
        case Method::R3: return count_r3(t, m, opts);
    }
    throw ParameterError("unknown repeats method");
}

}  // namespace asym::repeats
