#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace asym::repeats {

enum class Adversarial { AllEqual, Periodic };

std::string_view adversarial_name(Adversarial k) noexcept;  // "all-equal", "periodic"
std::optional<Adversarial> adversarial_from_string(std::string_view s) noexcept;

struct FileSource {
    std::filesystem::path path;
    bool operator==(const FileSource&) const = default;
};
struct LiteralSource {
    bool operator==(const LiteralSource&) const = default;
};
struct RandomSource {
    std::uint64_t seed = 0;
    unsigned alphabet_size = 256;
    bool operator==(const RandomSource&) const = default;
};
struct AdversarialSource {
    Adversarial kind = Adversarial::AllEqual;
    std::uint64_t period = 0;
    bool operator==(const AdversarialSource&) const = default;
};
using Provenance = std::variant<FileSource, LiteralSource, RandomSource, AdversarialSource>;

/// Immutable byte string. Copies share the underlying storage.
class Text {
public:
    Text() : Text(std::string{}, LiteralSource{}) {}
    Text(std::string bytes, Provenance from);

    static Text literal(std::string_view s) { return Text(std::string(s), LiteralSource{}); }

    std::span<const unsigned char> bytes() const noexcept {
        return {reinterpret_cast<const unsigned char*>(data_->data()), data_->size()};
    }
    std::string_view view() const noexcept { return *data_; }
    std::uint64_t size() const noexcept { return data_->size(); }
    const Provenance& provenance() const noexcept { return provenance_; }

    /// Short description for transcripts: "wsj.txt", "literal", "random(seed=1, alphabet=256)".
    std::string describe() const;

private:
    std::shared_ptr<const std::string> data_;
    Provenance provenance_;
};

enum class TextKind { Random, AllEqual, Periodic };

struct TextSpec {
    TextKind kind = TextKind::Random;
    std::uint64_t n = 0;
    unsigned alphabet_size = 256;  // 1..256
    std::uint64_t seed = 1;
    std::uint64_t period = 3;  // Periodic only
};

/// Random: i.i.d. uniform symbols. Alphabets up to 26 use 'a'.., larger ones raw byte values.
/// AllEqual: 'a' repeated. Periodic: a random block of `period` symbols, repeated.
/// Deterministic for a fixed spec. Throws ParameterError for alphabet_size outside [1, 256].
Text generate_text(const TextSpec& spec);

/// Reads a file as raw bytes, optionally only its first max_bytes. Throws IoError.
Text read_text(const std::filesystem::path& path, std::optional<std::uint64_t> max_bytes = std::nullopt);

}  // namespace asym::repeats
