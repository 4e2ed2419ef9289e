#ifndef HOMOFORGE_RNG_HPP
#define HOMOFORGE_RNG_HPP

#include <cstdint>
#include <random>

namespace homoforge {

/**
 * Seeded generator with platform-independent derived distributions.
 *
 * std::uniform_int_distribution and friends are implementation-defined,
 * so bounded integers and unit reals are derived from raw mt19937_64
 * output here. Same seed gives the same stream on every toolchain.
 */
class SeededRng
{
  public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, bound); bound > 0.
    std::uint64_t below(std::uint64_t bound)
    {
        // reject the top partial block so every residue is equally likely
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
        std::uint64_t x;
        do
            x = engine_();
        while (x >= limit);
        return x % bound;
    }

    /// Uniform real in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  private:
    std::mt19937_64 engine_;
};

} // namespace homoforge

#endif
