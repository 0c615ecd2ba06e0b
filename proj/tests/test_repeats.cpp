#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "asym/repeats.hpp"

using namespace asym::repeats;

namespace {

constexpr Method kAll[] = {Method::R0, Method::R1, Method::R2, Method::R3};

// Set of m-substrings seen so far; a position repeats if its substring is already in it.
std::uint64_t oracle(std::string_view t, std::uint64_t m) {
    std::set<std::string_view> seen;
    std::uint64_t count = 0;
    for (std::uint64_t i = 0; i + m <= t.size(); ++i)
        if (!seen.insert(t.substr(i, m)).second) ++count;
    return count;
}

const Text kMerry = Text::literal("merry.mary.marry.me");

}  // namespace

TEST_CASE("small examples") {
    for (Method meth : kAll) {
        CAPTURE(method_name(meth));
        CHECK(count_repeats(meth, kMerry, 6).nrepeats == 1);
        CHECK(count_repeats(meth, Text::literal("aaaa"), 2).nrepeats == 2);
        CHECK(count_repeats(meth, generate_text({TextKind::AllEqual, 1000}), 10).nrepeats == 990);
    }
}

TEST_CASE("merry.mary.marry.me at shorter lengths") {
    const std::pair<std::uint64_t, std::uint64_t> frozen[] = {{1, 13}, {2, 10}, {3, 7}, {4, 5},
                                                              {5, 3},  {6, 1},  {7, 0}, {19, 0}};
    for (auto [m, expect] : frozen) {
        CAPTURE(m);
        CHECK(oracle(kMerry.view(), m) == expect);
        for (Method meth : kAll) CHECK(count_repeats(meth, kMerry, m).nrepeats == expect);
    }
}

TEST_CASE("four methods agree on random and adversarial texts") {
    std::vector<Text> texts;
    for (unsigned a : {1u, 2u, 4u, 256u})
        for (std::uint64_t seed : {1u, 2u}) texts.push_back(generate_text({TextKind::Random, 1500, a, seed}));
    texts.push_back(generate_text({TextKind::AllEqual, 800}));
    for (std::uint64_t period : {1u, 2u, 7u}) {
        TextSpec s{TextKind::Periodic, 1200, 4, 3};
        s.period = period;
        texts.push_back(generate_text(s));
    }
    for (const Text& t : texts) {
        for (std::uint64_t m : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{5}, std::uint64_t{50}, t.size()}) {
            CAPTURE(t.describe());
            CAPTURE(m);
            const auto expect = oracle(t.view(), m);
            for (Method meth : kAll) CHECK(count_repeats(meth, t, m).nrepeats == expect);
        }
    }
}

TEST_CASE("randomised cases against the R0 oracle") {
    std::mt19937_64 rng(500);
    for (int i = 0; i < 500; ++i) {
        const std::uint64_t n = 1 + rng() % 120;
        const unsigned a = 1 + rng() % 4;
        const Text t = generate_text({TextKind::Random, n, a, rng()});
        const std::uint64_t m = 1 + rng() % n;
        Options opts;
        opts.pivot_seed = rng();
        const auto r0 = count_r0(t, m).nrepeats;
        CAPTURE(i);
        CHECK(count_r3(t, m, opts).nrepeats == r0);
        CHECK(count_r2(t, m).nrepeats == r0);
        CHECK(count_r1(t, m).nrepeats == r0);
    }
}

TEST_CASE("R1 equals R0 at n=10^4 on wide random text") {
    const Text t = generate_text({TextKind::Random, 10'000, 256, 1});
    CHECK(count_r1(t, 50).nrepeats == count_r0(t, 50).nrepeats);
    const Text bin = generate_text({TextKind::Random, 10'000, 2, 1});
    CHECK(count_r0(bin, 20).nrepeats == count_r3(bin, 20).nrepeats);
}

TEST_CASE("R0 compares exactly m characters per pair") {
    for (std::uint64_t m : {1u, 3u, 10u}) {
        const Text t = generate_text({TextKind::Random, 300, 2, m});
        const auto r = count_r0(t, m);
        const std::uint64_t k = t.size() - m;
        CHECK(r.char_cmps == m * k * (k + 1) / 2);
    }
}

TEST_CASE("bounds and monotonicity in m") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 40; ++i) {
        const Text t = generate_text({TextKind::Random, 400, static_cast<unsigned>(1 + rng() % 3), rng()});
        std::uint64_t prev = t.size();
        for (std::uint64_t m = 1; m <= 30; ++m) {
            const auto r = count_r3(t, m).nrepeats;
            CHECK(r <= t.size() - m);
            CHECK(r <= prev);
            prev = r;
        }
    }
}

TEST_CASE("R1 rarely compares more than a character or two per pair on random bytes") {
    const Text t = generate_text({TextKind::Random, 4000, 256, 11});
    const auto r = count_r1(t, 50);
    // Every pair (i, j) with j < i is visited because random text has no repeats at m=50.
    REQUIRE(r.nrepeats == 0);
    const double pairs = 0.5 * double(t.size() - 50) * double(t.size() - 49);
    CHECK(double(r.char_cmps) / pairs < 2.0);
}

TEST_CASE("suffix index") {
    SUBCASE("abab") {
        const auto idx = build_suffix_index(Text::literal("abab"), 2);
        REQUIRE(idx.entries.size() == 3);
        CHECK(std::set<std::uint64_t>{idx.entries[0], idx.entries[1]} == std::set<std::uint64_t>{0, 2});
        CHECK(idx.entries[2] == 1);
    }
    SUBCASE("permutation, sortedness and the group identity") {
        std::mt19937_64 rng(100);
        for (int i = 0; i < 100; ++i) {
            const std::uint64_t n = 1 + rng() % 300;
            const Text t = generate_text({TextKind::Random, n, static_cast<unsigned>(1 + rng() % 256), rng()});
            const std::uint64_t m = 1 + rng() % std::min<std::uint64_t>(n, 8);
            std::uint64_t cmps = 0;
            const auto idx = build_suffix_index(t, m, {}, &cmps);
            REQUIRE(idx.entries.size() == n - m + 1);
            auto sorted = idx.entries;
            std::sort(sorted.begin(), sorted.end());
            for (std::uint64_t k = 0; k < sorted.size(); ++k) CHECK(sorted[k] == k);

            const auto v = t.view();
            std::map<std::string_view, std::uint64_t> groups;
            for (std::uint64_t k = 0; k < idx.entries.size(); ++k) {
                const auto here = v.substr(idx.entries[k], m);
                if (k > 0) CHECK(v.substr(idx.entries[k - 1], m) <= here);
                ++groups[here];
            }
            std::uint64_t identity = 0;
            for (auto& [key, size] : groups) identity += size - 1;
            CHECK(identity == count_r2(t, m).nrepeats);
            if (n - m + 1 > 1) CHECK(cmps > 0);
        }
    }
    SUBCASE("the comparator reads at most m bytes per call") {
        const Text t = generate_text({TextKind::AllEqual, 2000});
        std::uint64_t cmps = 0;
        build_suffix_index(t, 4, {}, &cmps);
        const auto r = count_r2(t, 4);
        // Equal texts make every comparison run the full m bytes; R2 adds its adjacent scan.
        CHECK(cmps % 4 == 0);
        CHECK(r.char_cmps == cmps + 4 * (2000 - 4));
    }
}

TEST_CASE("ternary partition invariant holds at every step") {
    std::mt19937_64 rng(21);
    for (int i = 0; i < 60; ++i) {
        const std::uint64_t n = 2 + rng() % 400;
        const Text t = generate_text({TextKind::Random, n, static_cast<unsigned>(1 + rng() % 5), rng()});
        const std::uint64_t m = 1 + rng() % std::min<std::uint64_t>(n, 12);
        const auto v = t.bytes();
        std::uint64_t steps = 0;
        Options opts;
        opts.pivot_seed = rng();
        opts.on_partition = [&](const PartitionStep& s) {
            ++steps;
            REQUIRE(s.lo <= s.eq);
            REQUIRE(s.eq < s.fg);  // equal zone holds at least the pivot
            REQUIRE(s.fg <= s.hi);
            REQUIRE(s.range.size() == s.hi - s.lo);
            CHECK(s.depth < m);
            for (std::uint64_t k = 0; k < s.range.size(); ++k) {
                const unsigned char c = v[s.range[k] + s.depth];
                const std::uint64_t pos = s.lo + k;
                if (pos < s.eq) CHECK(c < s.pivot);
                else if (pos < s.fg) CHECK(c == s.pivot);
                else CHECK(c > s.pivot);
            }
        };
        CHECK(count_r3(t, m, opts).nrepeats == oracle(t.view(), m));
        if (n - m + 1 > 1) CHECK(steps > 0);
    }
}

TEST_CASE("all-equal text reaches the count through equal-zone recursion") {
    const Text t = generate_text({TextKind::AllEqual, 1000});
    std::uint64_t max_depth = 0;
    Options opts;
    opts.on_partition = [&](const PartitionStep& s) {
        CHECK(s.eq == s.lo);
        CHECK(s.fg == s.hi);
        max_depth = std::max(max_depth, s.depth);
    };
    CHECK(count_r3(t, 10, opts).nrepeats == 990);
    CHECK(max_depth == 9);
}

TEST_CASE("pivot seed does not change the answer") {
    const Text t = generate_text({TextKind::Random, 3000, 3, 5});
    const auto expect = count_r2(t, 7).nrepeats;
    for (std::uint64_t seed : {0u, 1u, 99u, 123456u}) {
        Options opts;
        opts.pivot_seed = seed;
        const auto r = count_r3(t, 7, opts);
        CHECK(r.nrepeats == expect);
        CHECK(r.pivot_seed == seed);
    }
}

TEST_CASE("memory accounting and limits") {
    const Text t = generate_text({TextKind::Random, 1000, 4, 1});
    CHECK(count_r2(t, 10).memory_bytes == 8 * 991);
    CHECK(count_r3(t, 10).memory_bytes == 8 * 991);
    CHECK(index_bytes(200'000'000, 50) == 1'599'999'608);

    Options tight;
    tight.memory_cap = 1000;
    try {
        count_r2(t, 10, tight);
        FAIL("expected OutOfMemoryError");
    } catch (const asym::OutOfMemoryError& e) {
        CHECK(e.requested_bytes() == 8 * 991);
    }
    CHECK_THROWS_AS(count_r3(t, 10, tight), asym::OutOfMemoryError);
}

TEST_CASE("m must lie in [1, n]") {
    for (Method meth : kAll) {
        CHECK_THROWS_AS(count_repeats(meth, kMerry, 0), asym::ParameterError);
        CHECK_THROWS_AS(count_repeats(meth, kMerry, 20), asym::ParameterError);
        CHECK_THROWS_AS(count_repeats(meth, Text{}, 1), asym::ParameterError);
    }
    CHECK_THROWS_AS(build_suffix_index(kMerry, 0), asym::ParameterError);
}

TEST_CASE("cancellation") {
    const Text t = generate_text({TextKind::Random, 200'000, 256, 1});
    Options opts;
    opts.cancel = asym::Cancellation::after(0.01);
    CHECK_THROWS_AS(count_r1(t, 100, opts), asym::Cancelled);
    CHECK_THROWS_AS(count_r0(t, 100, opts), asym::Cancelled);
}

TEST_CASE("names") {
    for (Method meth : kAll) CHECK(method_from_string(method_name(meth)) == meth);
    CHECK(method_from_string("3") == Method::R3);
    CHECK_FALSE(method_from_string("R9"));
    CHECK(method_title(Method::R3) == "Repeats 3: Build suffix array using ternary quicksort");
}
