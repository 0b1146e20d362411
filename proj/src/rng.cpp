#include "absim/rng.hpp"

namespace absim {

uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

RngStream derive_stream(uint64_t seed, uint64_t index) {
    const uint64_t mixed = splitmix64(splitmix64(seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))));
    return RngStream(mixed);
}

}  // namespace absim
