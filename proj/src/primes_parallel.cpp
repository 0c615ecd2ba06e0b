#include "asym/primes_parallel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>

namespace asym::primes {

PrimesReport count_parallel(const ParallelConfig& cfg, const Options& opts, ParallelStats* stats) {
    if (cfg.workers == 0) throw ParameterError("workers must be at least 1");
    if (cfg.segsize == 0) throw ParameterError("segsize must be at least 1");

    PrimesReport r;
    r.method = Method::Parallel;
    r.n = cfg.n;
    r.segsize = cfg.segsize;
    r.workers = cfg.workers;
    Stopwatch sw;

    const std::uint64_t n = cfg.n;
    // Read-only once the workers start.
    const std::vector<std::uint64_t> primes = primes_up_to(isqrt(n), opts);
    const std::uint64_t s = primes.size();
    r.sqrt_primes = s;
    if (s > 0) r.last_sqrt_prime = primes.back();

    const std::uint64_t buffer = std::min(cfg.segsize, std::max<std::uint64_t>(n, 1));
    const std::uint64_t need = std::uint64_t(cfg.workers) * (buffer + 8 * s) + 8 * s;
    if (need > opts.memory_cap) {
        throw OutOfMemoryError("parallel sieve needs " + std::to_string(need) + " bytes, over the memory cap",
                               need);
    }
    r.memory_bytes = std::uint64_t(cfg.workers) * (cfg.segsize + 8 * s) + 8 * s;

    const std::uint64_t total_segments = n == 0 ? 0 : (n - 1) / cfg.segsize + 1;
    if (stats) {
        stats->candidates_per_worker.assign(cfg.workers, 0);
        stats->segments_per_worker.assign(cfg.workers, 0);
        stats->segment_visits.assign(stats->track_segments ? total_segments : 0, 0);
    }

    std::atomic<std::uint64_t> cursor{0};
    std::atomic<bool> stop{false};
    std::uint64_t done_segments = 0;
    std::uint64_t nprimes = 0;
    std::uint64_t ops = 0;
    std::uint64_t last = 0;

#pragma omp parallel num_threads(static_cast<int>(cfg.workers)) reduction(+ : nprimes, ops) reduction(max : last)
    {
        const auto me = static_cast<std::size_t>(omp_get_thread_num());
        std::vector<std::uint8_t> isprime(buffer);
        // next[i] is the first multiple of primes[i] not yet crossed off; it stays
        // valid while this worker keeps claiming consecutive segments.
        std::vector<std::uint64_t> next(s);
        std::uint64_t resume = total_segments;

        while (!stop.load(std::memory_order_relaxed)) {
            const std::uint64_t seg = cursor.fetch_add(1, std::memory_order_relaxed);
            if (seg >= total_segments) break;
            const std::uint64_t bot = seg * cfg.segsize;
            const std::uint64_t top = bot + std::min(cfg.segsize, n - bot);
            const std::uint64_t len = top - bot;

            if (seg != resume) {
                for (std::uint64_t i = 0; i < s; ++i) next[i] = segment_start(primes[i], bot);
            }
            resume = seg + 1;

            std::fill(isprime.begin(), isprime.begin() + len, std::uint8_t{1});
            for (std::uint64_t i = 0; i < s; ++i) {
                const std::uint64_t p = primes[i];
                std::uint64_t c = next[i];
                for (; c < top; c += p) {
                    isprime[c - bot] = 0;
                    ++ops;
                }
                next[i] = c;
            }
            for (std::uint64_t c = std::max<std::uint64_t>(bot, 2); c < top; ++c) {
                ++ops;
                if (isprime[c - bot]) {
                    ++nprimes;
                    last = std::max(last, c);
                }
            }

            if (stats) {
                stats->candidates_per_worker[me] += len;
                stats->segments_per_worker[me] += 1;
                if (stats->track_segments) {
                    // atomic: a segment handed out twice must show up as 2
#pragma omp atomic
                    stats->segment_visits[seg] += 1;
                }
            }
            if (opts.heartbeat) {
#pragma omp critical(asym_heartbeat)
                opts.heartbeat(++done_segments, total_segments);
            }
            if (opts.cancel.expired()) stop.store(true, std::memory_order_relaxed);
        }
    }

    if (stop.load()) throw Cancelled{};
    r.nprimes = nprimes;
    r.sieve_ops = ops;
    if (nprimes > 0) r.last_prime = last;
    r.elapsed_seconds = sw.seconds();
    return r;
}

std::vector<SpeedupRow> speedup_curve(std::uint64_t n, std::uint64_t segsize,
                                      const std::vector<unsigned>& worker_list, unsigned repetitions) {
    if (worker_list.empty()) throw ParameterError("worker list must not be empty");
    if (!std::is_sorted(worker_list.begin(), worker_list.end()))
        throw ParameterError("worker list must be ascending");
    if (repetitions == 0) throw ParameterError("repetitions must be at least 1");

    std::vector<SpeedupRow> rows;
    auto average = [&](auto&& run) {
        SpeedupRow row;
        double total = 0.0;
        for (unsigned k = 0; k < repetitions; ++k) {
            const PrimesReport rep = run();
            total += rep.elapsed_seconds;
            row.nprimes = rep.nprimes;
        }
        row.elapsed_seconds = total / repetitions;
        return row;
    };

    SpeedupRow base = average([&] { return count_m5({n, segsize}); });
    base.workers = 0;
    rows.push_back(base);
    for (unsigned w : worker_list) {
        SpeedupRow row = average([&] { return count_parallel({n, segsize, w}); });
        row.workers = w;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace asym::primes
