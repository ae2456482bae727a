#include "thimac/generator.hpp"

#include <algorithm>
#include <charconv>
#include <random>

namespace thimac {

namespace {

std::size_t decimal_digits(std::int64_t value) {
    std::size_t n = 1;
    while (value >= 10) {
        value /= 10;
        ++n;
    }
    return n;
}

// Unbiased draw in [lo, hi] using raw engine output, so results do not depend
// on the standard library's distribution implementation.
std::int64_t draw(std::mt19937_64& engine, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    const std::uint64_t limit = std::mt19937_64::max() - std::mt19937_64::max() % span;
    std::uint64_t r = engine();
    while (r >= limit) r = engine();
    return lo + static_cast<std::int64_t>(r % span);
}

std::string pad(std::int64_t value, std::size_t width) {
    std::string text = std::to_string(value);
    if (text.size() < width) text.insert(0, width - text.size(), '0');
    return text;
}

}  // namespace

std::optional<std::string> check_generator_spec(const Generator& g) {
    if (g.kind == "digits") {
        if (g.args.size() != 1) return "digits expects exactly one argument";
        if (g.args[0] < 1 || g.args[0] > 18) return "digits length must be within [1, 18]";
        return std::nullopt;
    }
    if (g.kind == "range") {
        if (g.args.size() != 2 && g.args.size() != 3)
            return "range expects (lo, hi) or (lo, hi, width)";
        if (g.args[0] < 0 || g.args[0] > g.args[1]) return "range needs 0 <= lo <= hi";
        if (g.args.size() == 3 && (g.args[2] < 1 || g.args[2] > 18))
            return "range width must be within [1, 18]";
        if (g.args.size() == 3 && static_cast<std::size_t>(g.args[2]) < decimal_digits(g.args[1]))
            return "range width is narrower than its upper bound";
        return std::nullopt;
    }
    return "unknown generator kind '" + g.kind + "'";
}

std::size_t generator_width(const Generator& g) {
    if (g.kind == "digits") return static_cast<std::size_t>(g.args.at(0));
    if (g.args.size() == 3) return static_cast<std::size_t>(g.args[2]);
    return std::max<std::size_t>(2, decimal_digits(g.args.at(1)));
}

bool generator_accepts(const Generator& g, std::string_view value) {
    if (check_generator_spec(g)) return false;
    if (value.empty() || !std::all_of(value.begin(), value.end(),
                                      [](char c) { return c >= '0' && c <= '9'; }))
        return false;
    if (value.size() != generator_width(g)) return false;
    if (g.kind == "digits") return value.front() != '0';
    std::int64_t parsed = 0;
    std::from_chars(value.data(), value.data() + value.size(), parsed);
    return parsed >= g.args[0] && parsed <= g.args[1];
}

Result<Attrs> generate_instance(std::span<const Generator> generators, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    Attrs attrs;
    for (const Generator& g : generators) {
        if (auto problem = check_generator_spec(g)) {
            return Diagnostic{Severity::Error, "E_GEN_SPEC",
                              "generator '" + g.attr + "': " + *problem, g.span};
        }
        if (g.kind == "digits") {
            std::string text;
            text += static_cast<char>('0' + draw(engine, 1, 9));
            for (std::int64_t i = 1; i < g.args[0]; ++i)
                text += static_cast<char>('0' + draw(engine, 0, 9));
            attrs[g.attr] = text;
        } else {
            attrs[g.attr] = pad(draw(engine, g.args[0], g.args[1]), generator_width(g));
        }
    }
    return attrs;
}

std::uint64_t instance_seed(std::uint64_t run_seed, std::uint64_t token_id) {
    // splitmix64 finalizer
    std::uint64_t z = run_seed + 0x9E3779B97F4A7C15ULL * (token_id + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace thimac
