#ifndef SANDLAB_RNG_HPP
#define SANDLAB_RNG_HPP

#include <cstdint>

namespace sandlab {

// Counter-based generator: the value of trial i depends only on
// (seed, stream, i), so parallel schedules reproduce byte-identical results.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

struct CounterRng {
    CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter)
        : state_(splitmix64(splitmix64(seed ^ 0x53616e64ull) ^
                            splitmix64(stream * 0x9e3779b97f4a7c15ull + counter))) {}

    std::uint64_t next() {
        state_ += 0x9e3779b97f4a7c15ull;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw in [0, m); rejection for non-power-of-two m.
    std::uint64_t below(std::uint64_t m) {
        if ((m & (m - 1)) == 0) return next() & (m - 1);
        const std::uint64_t limit = m * (~0ull / m);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % m;
    }

    double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

}  // namespace sandlab

#endif
