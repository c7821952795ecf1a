// Deterministic seed derivation and content hashing helpers.

#pragma once

#include <cstdint>
#include <string_view>

namespace scpcc {

/// splitmix64 finalizer; good avalanche, stable across platforms.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Mix several words into one seed. Used to derive independent per-frame
/// generators from (master seed, snr index, frame index).
inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t h = splitmix64(a);
    h = splitmix64(h ^ (b + 0x9e3779b97f4a7c15ULL));
    h = splitmix64(h ^ (c + 0xc2b2ae3d27d4eb4fULL));
    return h;
}

/// FNV-1a over bytes; used for config/params content hashes.
inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace scpcc
