#pragma once

#include <cstdint>
#include <random>

namespace arbortile {

// Deterministic RNG wrapper. mt19937_64 output is pinned by the standard, but
// the std distributions are not, so bounded draws are done by rejection here.
// Same seed => same stream on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

    std::uint64_t next_u64() { return eng_(); }

    // uniform in [0, bound)
    std::uint64_t next_below(std::uint64_t bound) {
        if (bound == 0) return 0;
        std::uint64_t mask = ~std::uint64_t{0};
        std::uint64_t limit = mask - mask % bound;
        std::uint64_t x;
        do {
            x = eng_();
        } while (x >= limit);
        return x % bound;
    }

    int next_int(int lo, int hi) { // inclusive range
        return lo + static_cast<int>(next_below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    // Bernoulli with rational probability num/den
    bool next_bool(std::uint64_t num, std::uint64_t den) {
        return next_below(den) < num;
    }

    // derive an independent stream (for retries etc.)
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t stream) {
        return mix(mix(seed) ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    }

private:
    static std::uint64_t mix(std::uint64_t z) { // splitmix64 finalizer
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 eng_;
};

} // namespace arbortile
