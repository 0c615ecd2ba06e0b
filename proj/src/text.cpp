#include "asym/text.hpp"

#include <fstream>
#include <random>

#include "asym/common.hpp"

namespace asym::repeats {

std::string_view adversarial_name(Adversarial k) noexcept {
    return k == Adversarial::AllEqual ? "all-equal" : "periodic";
}

std::optional<Adversarial> adversarial_from_string(std::string_view s) noexcept {
    if (s == "all-equal") return Adversarial::AllEqual;
    if (s == "periodic") return Adversarial::Periodic;
    return std::nullopt;
}

Text::Text(std::string bytes, Provenance from)
    : data_(std::make_shared<const std::string>(std::move(bytes))), provenance_(std::move(from)) {}

std::string Text::describe() const {
    struct {
        std::string operator()(const FileSource& f) const { return f.path.filename().string(); }
        std::string operator()(const LiteralSource&) const { return "literal"; }
        std::string operator()(const RandomSource& r) const {
            return "random(seed=" + std::to_string(r.seed) + ", alphabet=" + std::to_string(r.alphabet_size) + ")";
        }
        std::string operator()(const AdversarialSource& a) const {
            std::string s(adversarial_name(a.kind));
            if (a.kind == Adversarial::Periodic) s += "(period=" + std::to_string(a.period) + ")";
            return s;
        }
    } visitor;
    return std::visit(visitor, provenance_);
}

namespace {

unsigned char symbol(unsigned v, unsigned alphabet) {
    return static_cast<unsigned char>(alphabet <= 26 ? 'a' + v : v);
}

std::string random_symbols(std::uint64_t count, unsigned alphabet, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> pick(0, alphabet - 1);
    std::string out(count, '\0');
    for (auto& ch : out) ch = static_cast<char>(symbol(pick(rng), alphabet));
    return out;
}

}  // namespace

Text generate_text(const TextSpec& spec) {
    if (spec.alphabet_size < 1 || spec.alphabet_size > 256)
        throw ParameterError("alphabet size must be in [1, 256], got " + std::to_string(spec.alphabet_size));
    switch (spec.kind) {
        case TextKind::Random:
            return Text(random_symbols(spec.n, spec.alphabet_size, spec.seed),
                        RandomSource{spec.seed, spec.alphabet_size});
        case TextKind::AllEqual:
            return Text(std::string(spec.n, 'a'), AdversarialSource{Adversarial::AllEqual, 1});
        case TextKind::Periodic: {
            if (spec.period == 0) throw ParameterError("period must be at least 1");
            const std::string block = random_symbols(spec.period, spec.alphabet_size, spec.seed);
            std::string out(spec.n, '\0');
            for (std::uint64_t i = 0; i < spec.n; ++i) out[i] = block[i % spec.period];
            return Text(std::move(out), AdversarialSource{Adversarial::Periodic, spec.period});
        }
    }
    throw ParameterError("unknown text kind");
}

Text read_text(const std::filesystem::path& path, std::optional<std::uint64_t> max_bytes) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::error_code ec;
    const auto file_size = std::filesystem::file_size(path, ec);
    if (ec) throw IoError("cannot stat " + path.string() + ": " + ec.message());
    std::uint64_t want = file_size;
    if (max_bytes && *max_bytes < want) want = *max_bytes;
    std::string bytes(want, '\0');
    in.read(bytes.data(), static_cast<std::streamsize>(want));
    if (static_cast<std::uint64_t>(in.gcount()) != want) throw IoError("short read from " + path.string());
    return Text(std::move(bytes), FileSource{path});
}

}  // namespace asym::repeats
