#include "asym/common.hpp"

#include <cmath>

namespace asym {

OutOfMemoryError::OutOfMemoryError(std::string what, std::uint64_t requested_bytes)
    : std::runtime_error(std::move(what)), requested_(requested_bytes) {}

Cancellation Cancellation::after(double seconds) {
    Cancellation c;
    c.armed_ = true;
    c.deadline_ = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                     std::chrono::duration<double>(seconds));
    return c;
}

std::uint64_t isqrt(std::uint64_t n) noexcept {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    // The double estimate can be off by one either way near 2^64.
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

namespace {

[[noreturn]] void bad_count(std::string_view text, const char* why) {
    throw ParameterError("invalid count '" + std::string(text) + "': " + why);
}

bool mul_checked(std::uint64_t& v, std::uint64_t k) {
    return !__builtin_mul_overflow(v, k, &v);
}

}  // namespace

std::uint64_t parse_count(std::string_view text) {
    std::string digits;
    std::size_t frac_len = 0;
    bool seen_dot = false;
    bool seen_exp = false;
    std::int64_t exponent = 0;
    bool exp_digits = false;

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '_') continue;
        if (!seen_exp) {
            if (ch >= '0' && ch <= '9') {
                digits.push_back(ch);
                if (seen_dot) ++frac_len;
            } else if (ch == '.' && !seen_dot) {
                seen_dot = true;
            } else if ((ch == 'e' || ch == 'E') && !digits.empty()) {
                seen_exp = true;
                if (i + 1 < text.size() && text[i + 1] == '+') ++i;
            } else {
                bad_count(text, "unexpected character");
            }
        } else {
            if (ch < '0' || ch > '9') bad_count(text, "bad exponent");
            exponent = exponent * 10 + (ch - '0');
            exp_digits = true;
            if (exponent > 40) bad_count(text, "exponent too large");
        }
    }
    if (digits.empty()) bad_count(text, "no digits");
    if (seen_exp && !exp_digits) bad_count(text, "missing exponent");

    // Drop fraction digits against the exponent; any leftover must be zeros.
    std::int64_t shift = exponent - static_cast<std::int64_t>(frac_len);
    while (shift < 0) {
        if (digits.back() != '0') bad_count(text, "not an integer");
        digits.pop_back();
        ++shift;
        if (digits.empty()) digits = "0";
    }

    std::uint64_t value = 0;
    for (char ch : digits) {
        if (!mul_checked(value, 10) ||
            __builtin_add_overflow(value, std::uint64_t(ch - '0'), &value))
            bad_count(text, "out of range");
    }
    for (std::int64_t k = 0; k < shift; ++k) {
        if (!mul_checked(value, 10)) bad_count(text, "out of range");
    }
    return value;
}

}  // namespace asym
