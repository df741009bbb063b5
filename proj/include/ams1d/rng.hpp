#ifndef AMS1D_RNG_HPP
#define AMS1D_RNG_HPP

#include <cstdint>

namespace ams1d {

/// Counter-based deterministic generator (SplitMix64 finalizer over a
/// strided counter).  The n-th draw is a pure function of (seed, n), so a
/// sequence can be reproduced bit-for-bit on any platform, and draws never
/// depend on how many values earlier callers consumed from other instances.
///
/// next() returns doubles uniform on the open interval (0,1): the 53-bit
/// integer payload is offset by 1/2 before scaling, so 0 and 1 are never hit.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : seed_(seed) {}

    double next() {
        std::uint64_t z = seed_ + (++counter_) * 0x9E3779B97F4A7C15ULL;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        z ^= z >> 31;
        return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t drawsConsumed() const { return counter_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
};

} // namespace ams1d

#endif
