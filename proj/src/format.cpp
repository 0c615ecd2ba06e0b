#include "asym/format.hpp"

#include <cstdio>

namespace asym::fmt {

std::string grouped(std::uint64_t v) {
    std::string digits = std::to_string(v);
    std::string out;
    const std::size_t lead = digits.size() % 3;
    for (std::size_t i = 0; i < digits.size(); ++i) {
        if (i > 0 && (i + 3 - lead) % 3 == 0) out.push_back(',');
        out.push_back(digits[i]);
    }
    return out;
}

std::string shorthand(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", static_cast<double>(v));
    return buf;
}

std::string mebibytes(std::uint64_t bytes) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.1f MiB", static_cast<double>(bytes) / (1024.0 * 1024.0));
    return buf;
}

std::string kv(std::string_view key, std::string_view value, std::size_t width) {
    std::string line(key);
    if (line.size() < width) line.append(width - line.size(), ' ');
    line += "= ";
    line += value;
    line += '\n';
    return line;
}

std::string banner(std::string_view title) {
    const std::string rule(title.size(), '-');
    return rule + '\n' + std::string(title) + '\n' + rule + '\n';
}

namespace {

constexpr std::size_t kPrimesKey = 26;
constexpr std::size_t kRepeatsKey = 20;

std::string seconds(double s) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3f seconds", s);
    return buf;
}

}  // namespace

std::string transcript(const primes::PrimesReport& r) {
    using primes::Method;
    std::string out = banner(primes::method_title(r.method));
    out += kv("finding primes up to n", grouped(r.n) + " = " + shorthand(r.n), kPrimesKey);
    if (r.sqrt_primes) {
        out += kv("number of primes < sqrtn", grouped(*r.sqrt_primes), kPrimesKey);
        out += kv("last of those primes", r.last_sqrt_prime ? grouped(*r.last_sqrt_prime) : "none", kPrimesKey);
    }
    if (r.method == Method::Parallel) out += kv("worker threads", std::to_string(r.workers), kPrimesKey);
    out += kv("memory space used", mebibytes(r.memory_bytes), kPrimesKey);
    out += kv("number of primes < n", grouped(r.nprimes), kPrimesKey);

    char density[32];
    const double pct = r.n == 0 ? 0.0 : 100.0 * static_cast<double>(r.nprimes) / static_cast<double>(r.n);
    std::snprintf(density, sizeof density, "%.2f%%", pct);
    out += kv("density of primes", density, kPrimesKey);
    out += kv("last of those primes", r.last_prime ? grouped(*r.last_prime) : "none", kPrimesKey);

    if (!primes::is_sieve(r.method)) {
        out += kv("number of mod operations", grouped(r.mod_ops), kPrimesKey);
    } else if (r.method != Method::M5) {
        out += kv("sieve operations", grouped(r.sieve_ops), kPrimesKey);
    }
    out += kv("computation time", seconds(r.elapsed_seconds), kPrimesKey);
    return out;
}

std::string transcript(const repeats::RepeatsReport& r) {
    std::string out = banner(repeats::method_title(r.method));
    out += kv("text size n", grouped(r.n) + " = " + shorthand(r.n) + " from " + r.source, kRepeatsKey);
    out += kv("repeat length m", grouped(r.m), kRepeatsKey);
    out += kv("memory space used", mebibytes(r.memory_bytes), kRepeatsKey);
    out += kv("number of m-repeats", grouped(r.nrepeats), kRepeatsKey);
    if (r.method == repeats::Method::R0 || r.method == repeats::Method::R1)
        out += kv("char comparisons", grouped(r.char_cmps), kRepeatsKey);
    out += kv("computation time", seconds(r.elapsed_seconds), kRepeatsKey);
    return out;
}

}  // namespace asym::fmt
