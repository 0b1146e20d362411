#pragma once

#include <cstdint>
#include <random>

namespace absim {

uint64_t splitmix64(uint64_t x);

/// Deterministic random stream: mt19937_64 with explicitly coded uniform and
/// normal transforms so identical seeds give identical draws everywhere.
class RngStream {
  public:
    explicit RngStream(uint64_t seed) : eng_(seed) {
    }

    uint64_t next_u64() {
        return eng_();
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() {
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }

    /// Box-Muller; consumes exactly two uniforms per call.
    double normal(double mean = 0.0, double stddev = 1.0) {
        double u1 = uniform();
        while (u1 <= 0.0) {
            u1 = uniform();
        }
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        return mean + stddev * r * std::cos(6.283185307179586476925286766559 * u2);
    }

  private:
    std::mt19937_64 eng_;
};

/// Counter-based per-trial stream: two splitmix64 rounds over
/// seed XOR golden_gamma*(index+1). Any trial can be generated in isolation,
/// so parallel schedules cannot change the draws.
RngStream derive_stream(uint64_t seed, uint64_t index);

}  // namespace absim
