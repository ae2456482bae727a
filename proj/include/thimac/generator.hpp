#pragma once

// Seeded attribute generators used when a thimac creates instances, e.g. a
// card whose number, day, month and year are implanted by an integer machine.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "thimac/model.hpp"

namespace thimac {

using Attrs = std::map<std::string, std::string>;

/// Checks kind and arguments of a generator:
///   digits(n)            n-digit positive integer string, 1 <= n <= 18
///   range(lo, hi)        zero-padded to max(2, digits(hi))
///   range(lo, hi, width) zero-padded to width
/// Returns an error message for unknown kinds or bad arguments.
[[nodiscard]] std::optional<std::string> check_generator_spec(const Generator& generator);

/// Width a generated value of `generator` is padded to.
[[nodiscard]] std::size_t generator_width(const Generator& generator);

/// True when `value` could have been produced by `generator`.
[[nodiscard]] bool generator_accepts(const Generator& generator, std::string_view value);

/// Deterministic for (generators, seed). Draws happen in declaration order
/// from one engine seeded with `seed`. Fails with E_GEN_SPEC on the first
/// malformed generator.
Result<Attrs> generate_instance(std::span<const Generator> generators, std::uint64_t seed);

/// Mixes a run seed with a token id so that every created instance gets its
/// own stream.
[[nodiscard]] std::uint64_t instance_seed(std::uint64_t run_seed, std::uint64_t token_id);

}  // namespace thimac
