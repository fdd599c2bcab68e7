#pragma once

#include <cstdint>

namespace packrigid {

// Small deterministic generator (splitmix64). Used everywhere randomness is
// needed so that reports depend only on (seed, stream index), independent of
// platform library details.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform in [0, n).
    std::uint64_t next_below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

private:
    std::uint64_t state_;
};

// Independent stream for trial `index` of experiment `seed`; parallel and
// serial execution see identical numbers.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 mixer(seed ^ (0x7f4a7c15ull + index * 0x9e3779b97f4a7c15ull));
    mixer.next_u64();
    return mixer;
}

}  // namespace packrigid
