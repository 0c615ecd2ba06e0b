#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "asym/primes.hpp"
#include "asym/repeats.hpp"

namespace asym::fmt {

/// 37607912018 -> "37,607,912,018"
std::string grouped(std::uint64_t v);

/// printf %g: 1000000000000 -> "1e+12", 19 -> "19"
std::string shorthand(std::uint64_t v);

/// One decimal place of MiB: 9644576 -> "9.2 MiB"
std::string mebibytes(std::uint64_t bytes);

/// `key<pad>= value` with the key left-justified in `width` columns.
std::string kv(std::string_view key, std::string_view value, std::size_t width);

/// Dashed banner: rule, title, rule.
std::string banner(std::string_view title);

std::string transcript(const primes::PrimesReport& r);
std::string transcript(const repeats::RepeatsReport& r);

}  // namespace asym::fmt
