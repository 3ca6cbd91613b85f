#pragma once

#include <cstdint>

namespace hyperperc {

// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

// Counter-based generator: draw(counter) is a pure function of
// (seed, stream, counter), so any sample can be regenerated in isolation and
// in any order. Percolation uses stream = sample index, counter = vertex id.
class CounterRng {
  public:
    constexpr CounterRng(std::uint64_t seed, std::uint64_t stream)
        : key_(splitmix64(splitmix64(seed) ^ (stream * 0xd1b54a32d192ed03ULL)))
    {
    }

    constexpr std::uint64_t bits(std::uint64_t counter) const { return splitmix64(key_ ^ splitmix64(counter)); }

    // Uniform in [0, 1) with 53 random bits.
    constexpr double uniform(std::uint64_t counter) const
    {
        return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
    }

  private:
    std::uint64_t key_;
};

}  // namespace hyperperc
