#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace excursion {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Order-sensitive hash of a word sequence; used to derive independent
/// stream seeds from (base seed, coordinates...) tuples.
[[nodiscard]] constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (std::uint64_t w : words) h = mix64(h ^ mix64(w));
    return h;
}

using Rng = std::mt19937_64;

}  // namespace excursion
