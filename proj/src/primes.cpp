#include "asym/primes.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <new>
#include <string>

namespace asym::primes {

namespace {

constexpr std::array<std::string_view, 7> kNames = {"M0", "M1", "M2", "M3", "M4", "M5", "parallel"};

constexpr std::array<std::string_view, 7> kTitles = {
    "Primes 0: Trial division, every divisor",
    "Primes 1: Trial division, exit on first factor",
    "Primes 2: Trial division up to the square root",
    "Primes 3: Trial division by known primes",
    "Primes 4: Sieve of Eratosthenes",
    "Primes 5: Segmented sieve, bells and whistles",
    "Primes 5: Segmented sieve, parallel segments",
};

std::string bytes_text(std::uint64_t bytes) {
    return std::to_string(bytes) + " bytes";
}

void check_cap(std::uint64_t bytes, const Options& opts, const char* what) {
    if (bytes > opts.memory_cap) {
        throw OutOfMemoryError(std::string(what) + " needs " + bytes_text(bytes) +
                                   ", over the memory cap of " + bytes_text(opts.memory_cap),
                               bytes);
    }
}

template <typename U>
void trial_m0(std::uint64_t n, const Options& opts, PrimesReport& r) {
    PollGate gate(opts.cancel);
    const U last = static_cast<U>(n - 1);
    for (U c = 2; c <= last; ++c) {
        unsigned isprime = 1;
        for (U d = 2; d < c; ++d) {
            if (c % d == 0) isprime = 0;
        }
        r.mod_ops += c - 2;
        if (isprime) {
            ++r.nprimes;
            r.last_prime = c;
        }
        gate.tick(r.mod_ops);
        if (c == std::numeric_limits<U>::max()) break;
    }
}

template <typename U>
void trial_m1(std::uint64_t n, const Options& opts, PrimesReport& r) {
    PollGate gate(opts.cancel);
    const U last = static_cast<U>(n - 1);
    for (U c = 2; c <= last; ++c) {
        unsigned isprime = 1;
        U d = 2;
        for (; d < c; ++d) {
            if (c % d == 0) {
                isprime = 0;
                ++d;
                break;
            }
        }
        r.mod_ops += d - 2;
        if (isprime) {
            ++r.nprimes;
            r.last_prime = c;
        }
        gate.tick(r.mod_ops);
        if (c == std::numeric_limits<U>::max()) break;
    }
}

template <typename U>
void trial_m2(std::uint64_t n, const Options& opts, PrimesReport& r) {
    PollGate gate(opts.cancel);
    const U last = static_cast<U>(n - 1);
    for (U c = 2; c <= last; ++c) {
        unsigned isprime = 1;
        std::uint64_t ops = 0;
        for (U d = 2; d < c && square_at_most(d, c); ++d) {
            ++ops;
            if (c % d == 0) {
                isprime = 0;
                break;
            }
        }
        r.mod_ops += ops;
        if (isprime) {
            ++r.nprimes;
            r.last_prime = c;
        }
        gate.tick(r.mod_ops);
        if (c == std::numeric_limits<U>::max()) break;
    }
}

class PrimeArray {
public:
    static constexpr std::size_t kInitial = 1024;

    PrimeArray(const Options& opts) : opts_(opts) { grow(kInitial); }

    void push(std::uint64_t p) {
        if (items_.size() == items_.capacity()) grow(items_.capacity() * 2);
        items_.push_back(p);
    }
    const std::vector<std::uint64_t>& items() const noexcept { return items_; }
    std::uint64_t bytes() const noexcept { return items_.capacity() * sizeof(std::uint64_t); }

private:
    void grow(std::size_t entries) {
        const std::uint64_t want = std::uint64_t(entries) * sizeof(std::uint64_t);
        check_cap(want, opts_, "prime array");
        try {
            items_.reserve(entries);
        } catch (const std::bad_alloc&) {
            throw OutOfMemoryError("prime array allocation of " + bytes_text(want) + " failed", want);
        }
    }

    const Options& opts_;
    std::vector<std::uint64_t> items_;
};

template <typename U>
void trial_m3(std::uint64_t n, const Options& opts, PrimesReport& r) {
    PollGate gate(opts.cancel);
    PrimeArray known(opts);
    const U last = static_cast<U>(n - 1);
    for (U c = 2; c <= last; ++c) {
        unsigned isprime = 1;
        for (std::uint64_t p : known.items()) {
            const U d = static_cast<U>(p);
            if (!square_at_most(d, c)) break;
            ++r.mod_ops;
            if (c % d == 0) {
                isprime = 0;
                break;
            }
        }
        if (isprime) {
            known.push(c);
            ++r.nprimes;
            r.last_prime = c;
        }
        gate.tick(r.mod_ops);
        if (c == std::numeric_limits<U>::max()) break;
    }
    r.memory_bytes = known.bytes();
}

template <template <typename> class Loop>
PrimesReport run_trial(Method m, std::uint64_t n, const Options& opts) {
    PrimesReport r;
    r.method = m;
    r.n = n;
    Stopwatch sw;
    if (n > 2) {
        if (n - 1 <= std::numeric_limits<std::uint32_t>::max()) {
            Loop<std::uint32_t>{}(n, opts, r);
        } else {
            Loop<std::uint64_t>{}(n, opts, r);
        }
    }
    r.elapsed_seconds = sw.seconds();
    return r;
}

template <typename U> struct M0Loop { void operator()(std::uint64_t n, const Options& o, PrimesReport& r) { trial_m0<U>(n, o, r); } };
template <typename U> struct M1Loop { void operator()(std::uint64_t n, const Options& o, PrimesReport& r) { trial_m1<U>(n, o, r); } };
template <typename U> struct M2Loop { void operator()(std::uint64_t n, const Options& o, PrimesReport& r) { trial_m2<U>(n, o, r); } };
template <typename U> struct M3Loop { void operator()(std::uint64_t n, const Options& o, PrimesReport& r) { trial_m3<U>(n, o, r); } };

std::vector<std::uint8_t> allocate_bytes(std::uint64_t bytes, std::uint8_t fill, const Options& opts,
                                         const char* what) {
    check_cap(bytes, opts, what);
    try {
        return std::vector<std::uint8_t>(bytes, fill);
    } catch (const std::bad_alloc&) {
        throw OutOfMemoryError(std::string(what) + " allocation of " + bytes_text(bytes) + " failed", bytes);
    } catch (const std::length_error&) {
        throw OutOfMemoryError(std::string(what) + " allocation of " + bytes_text(bytes) + " failed", bytes);
    }
}

}  // namespace

std::string_view method_name(Method m) noexcept { return kNames[static_cast<std::size_t>(m)]; }
std::string_view method_title(Method m) noexcept { return kTitles[static_cast<std::size_t>(m)]; }

std::optional<Method> method_from_string(std::string_view s) noexcept {
    if (s == "parallel" || s == "p") return Method::Parallel;
    if (s.size() == 2 && (s[0] == 'M' || s[0] == 'm')) s.remove_prefix(1);
    if (s.size() == 1 && s[0] >= '0' && s[0] <= '5') return static_cast<Method>(s[0] - '0');
    return std::nullopt;
}

bool is_sieve(Method m) noexcept {
    return m == Method::M4 || m == Method::M5 || m == Method::Parallel;
}

PrimesReport count_m0(std::uint64_t n, const Options& opts) { return run_trial<M0Loop>(Method::M0, n, opts); }
PrimesReport count_m1(std::uint64_t n, const Options& opts) { return run_trial<M1Loop>(Method::M1, n, opts); }
PrimesReport count_m2(std::uint64_t n, const Options& opts) { return run_trial<M2Loop>(Method::M2, n, opts); }

PrimesReport count_m3(std::uint64_t n, const Options& opts) {
    auto r = run_trial<M3Loop>(Method::M3, n, opts);
    if (r.memory_bytes == 0) r.memory_bytes = PrimeArray::kInitial * sizeof(std::uint64_t);
    return r;
}

SieveTable sieve_table(std::uint64_t n, const Options& opts) {
    SieveTable t;
    t.is_prime = allocate_bytes(n, 1, opts, "sieve array");
    if (n > 0) t.is_prime[0] = 0;
    if (n > 1) t.is_prime[1] = 0;

    PollGate gate(opts.cancel);
    auto& flags = t.is_prime;
    for (std::uint64_t v = 2; v < n; ++v) {
        ++t.survivor_tests;
        if (!flags[v]) continue;
        ++t.nprimes;
        if (square_at_most(v, n - 1)) {
            std::uint64_t c = v * v;
            t.eliminations += (n - 1 - c) / v + 1;
            for (; c < n; c += v) flags[c] = 0;
        }
        gate.tick(t.eliminations + t.survivor_tests);
    }
    return t;
}

PrimesReport count_m4(std::uint64_t n, const Options& opts) {
    PrimesReport r;
    r.method = Method::M4;
    r.n = n;
    Stopwatch sw;
    const SieveTable t = sieve_table(n, opts);
    r.nprimes = t.nprimes;
    r.sieve_ops = t.eliminations + t.survivor_tests;
    r.memory_bytes = n;
    for (std::uint64_t c = n; c-- > 2;) {
        if (t.is_prime[c]) {
            r.last_prime = c;
            break;
        }
    }
    r.elapsed_seconds = sw.seconds();
    return r;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit, const Options& opts) {
    const SieveTable t = sieve_table(limit + 1, opts);
    std::vector<std::uint64_t> out;
    out.reserve(t.nprimes);
    for (std::uint64_t c = 2; c <= limit; ++c) {
        if (t.is_prime[c]) out.push_back(c);
    }
    return out;
}

PrimesReport count_m5(const SieveConfig& cfg, const Options& opts) {
    if (cfg.segsize == 0) throw ParameterError("segsize must be at least 1");
    PrimesReport r;
    r.method = Method::M5;
    r.n = cfg.n;
    r.segsize = cfg.segsize;
    Stopwatch sw;

    const std::uint64_t n = cfg.n;
    const std::vector<std::uint64_t> primes = primes_up_to(isqrt(n), opts);
    const std::uint64_t s = primes.size();
    r.sqrt_primes = s;
    if (s > 0) r.last_sqrt_prime = primes.back();
    r.memory_bytes = cfg.segsize + 16 * s;

    // Only the part of a segment below n is ever touched.
    const std::uint64_t buffer = std::min(cfg.segsize, std::max<std::uint64_t>(n, 1));
    check_cap(buffer + 16 * s, opts, "segmented sieve");

    std::vector<std::uint64_t> next(s);
    for (std::uint64_t i = 0; i < s; ++i) next[i] = primes[i] * primes[i];

    std::vector<std::uint8_t> isprime = allocate_bytes(buffer, 1, opts, "segment buffer");

    const std::uint64_t total_segments = n == 0 ? 0 : (n - 1) / cfg.segsize + 1;
    std::uint64_t elim = 0;
    std::uint64_t tests = 0;
    std::uint64_t bot = 0;
    for (std::uint64_t seg = 0; seg < total_segments; ++seg) {
        const std::uint64_t top = bot + std::min(cfg.segsize, n - bot);
        std::fill(isprime.begin(), isprime.begin() + (top - bot), std::uint8_t{1});
        for (std::uint64_t i = 0; i < s; ++i) {
            const std::uint64_t p = primes[i];
            std::uint64_t c = next[i];
            for (; c < top; c += p) {
                isprime[c - bot] = 0;
                ++elim;
            }
            next[i] = c;
        }
        for (std::uint64_t c = std::max<std::uint64_t>(bot, 2); c < top; ++c) {
            ++tests;
            if (isprime[c - bot]) {
                ++r.nprimes;
                r.last_prime = c;
            }
        }
        if (opts.heartbeat) opts.heartbeat(seg + 1, total_segments);
        if (opts.cancel.armed()) opts.cancel.poll();
        bot = top;
    }
    r.sieve_ops = elim + tests;
    r.elapsed_seconds = sw.seconds();
    return r;
}

std::uint64_t exact_mod_ops(Method m, std::uint64_t n) {
    if (is_sieve(m)) throw ParameterError("exact_mod_ops applies to trial-division methods only");
    if (n < 3) return 0;
    if (m == Method::M0) return (n - 2) * (n - 3) / 2;
    if (n - 1 > std::numeric_limits<std::uint32_t>::max())
        throw ParameterError("exact_mod_ops supports n up to 2^32");

    // Smallest prime factor of every c < n (0 marks a prime).
    std::vector<std::uint32_t> spf(n, 0);
    const std::uint64_t root = isqrt(n - 1);
    for (std::uint64_t p = 2; p <= root; ++p) {
        if (spf[p] != 0) continue;
        for (std::uint64_t c = p * p; c < n; c += p) {
            if (spf[c] == 0) spf[c] = static_cast<std::uint32_t>(p);
        }
    }
    // pi_le[x] = number of primes <= x, needed up to sqrt(n) for M3.
    std::vector<std::uint32_t> pi_le(root + 1, 0);
    for (std::uint64_t x = 2; x <= root; ++x) pi_le[x] = pi_le[x - 1] + (spf[x] == 0 ? 1 : 0);

    std::uint64_t total = 0;
    for (std::uint64_t c = 2; c < n; ++c) {
        const bool prime = spf[c] == 0;
        switch (m) {
            case Method::M1:
                total += prime ? c - 2 : spf[c] - 1;
                break;
            case Method::M2:
                total += prime ? isqrt(c) - 1 : spf[c] - 1;
                break;
            case Method::M3:
                total += prime ? pi_le[isqrt(c)] : pi_le[spf[c]];
                break;
            default:
                break;
        }
    }
    return total;
}

}  // namespace asym::primes
