#include <doctest.h>

#include "asym/format.hpp"

using namespace asym;

TEST_CASE("number formatting") {
    CHECK(fmt::grouped(0) == "0");
    CHECK(fmt::grouped(999) == "999");
    CHECK(fmt::grouped(1000) == "1,000");
    CHECK(fmt::grouped(37'607'912'018ULL) == "37,607,912,018");
    CHECK(fmt::grouped(1'000'000'000'000ULL) == "1,000,000,000,000");
    CHECK(fmt::grouped(18'446'744'073'709'551'615ULL) == "18,446,744,073,709,551,615");

    CHECK(fmt::shorthand(1'000'000'000'000ULL) == "1e+12");
    CHECK(fmt::shorthand(200'000'000) == "2e+08");
    CHECK(fmt::shorthand(19) == "19");
    CHECK(fmt::shorthand(1'000'000) == "1e+06");

    CHECK(fmt::mebibytes(8'388'608 + 16 * 78'497) == "9.2 MiB");
    CHECK(fmt::mebibytes(repeats::index_bytes(200'000'000, 50)) == "1525.9 MiB");
    CHECK(fmt::mebibytes(0) == "0.0 MiB");

    CHECK(fmt::kv("repeat length m", "50", 20) == "repeat length m     = 50\n");
    CHECK(fmt::banner("abc") == "---\nabc\n---\n");
}

TEST_CASE("trillion-size segmented sieve transcript") {
    primes::PrimesReport r;
    r.method = primes::Method::M5;
    r.n = 1'000'000'000'000ULL;
    r.segsize = primes::kDefaultSegsize;
    r.sqrt_primes = 78'497;
    r.last_sqrt_prime = 999'983;
    r.memory_bytes = primes::kDefaultSegsize + 16 * 78'497;
    r.nprimes = 37'607'912'018ULL;
    r.last_prime = 999'999'999'989ULL;
    r.sieve_ops = 123;
    r.elapsed_seconds = 1767.1734;

    const std::string expect =
        "---------------------------------------------\n"
        "Primes 5: Segmented sieve, bells and whistles\n"
        "---------------------------------------------\n"
        "finding primes up to n    = 1,000,000,000,000 = 1e+12\n"
        "number of primes < sqrtn  = 78,497\n"
        "last of those primes      = 999,983\n"
        "memory space used         = 9.2 MiB\n"
        "number of primes < n      = 37,607,912,018\n"
        "density of primes         = 3.76%\n"
        "last of those primes      = 999,999,999,989\n"
        "computation time          = 1767.173 seconds\n";
    CHECK(fmt::transcript(r) == expect);
}

TEST_CASE("suffix array transcript") {
    repeats::RepeatsReport r;
    r.method = repeats::Method::R3;
    r.n = 200'000'000;
    r.m = 50;
    r.memory_bytes = repeats::index_bytes(r.n, r.m);
    r.nrepeats = 10'189'540;
    r.elapsed_seconds = 26.2531;
    r.source = "wsj.txt";

    const std::string expect =
        "-----------------------------------------------------\n"
        "Repeats 3: Build suffix array using ternary quicksort\n"
        "-----------------------------------------------------\n"
        "text size n         = 200,000,000 = 2e+08 from wsj.txt\n"
        "repeat length m     = 50\n"
        "memory space used   = 1525.9 MiB\n"
        "number of m-repeats = 10,189,540\n"
        "computation time    = 26.253 seconds\n";
    CHECK(fmt::transcript(r) == expect);
}

TEST_CASE("method-specific transcript lines") {
    const auto m2 = fmt::transcript(primes::count_m2(1000));
    CHECK(m2.find("number of mod operations  = 5,287\n") != std::string::npos);
    CHECK(m2.find("number of primes < n      = 168\n") != std::string::npos);
    CHECK(m2.find("density of primes         = 16.80%\n") != std::string::npos);
    CHECK(m2.find("last of those primes      = 997\n") != std::string::npos);
    CHECK(m2.find("sqrtn") == std::string::npos);

    const auto m4 = fmt::transcript(primes::count_m4(10));
    CHECK(m4.find("sieve operations          = 12\n") != std::string::npos);
    CHECK(m4.find("memory space used         = 0.0 MiB\n") != std::string::npos);

    const auto empty = fmt::transcript(primes::count_m1(2));
    CHECK(empty.find("last of those primes      = none\n") != std::string::npos);

    const auto r1 = fmt::transcript(repeats::count_r1(repeats::Text::literal("aaaa"), 2));
    CHECK(r1.find("Repeats 1") != std::string::npos);
    CHECK(r1.find("text size n         = 4 = 4 from literal\n") != std::string::npos);
    CHECK(r1.find("number of m-repeats = 2\n") != std::string::npos);
    CHECK(r1.find("char comparisons") != std::string::npos);
}
