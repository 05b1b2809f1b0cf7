#pragma once

#include <cstdint>
#include <random>

namespace ltrc {

// splitmix64 finalizer. Used to spread user seeds and stream indices into
// statistically independent engine seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

// Deterministic seed for a substream addressed by up to three indices
// (e.g. parent, replication, candidate). Distinct addresses give unrelated
// seeds, so substreams may be consumed in any order or in parallel.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0,
                                 std::uint64_t b = 0, std::uint64_t c = 0) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ a);
    s = mix64(s ^ b);
    s = mix64(s ^ c);
    return s;
}

// Uniform draws on the open interval (0, 1), built directly from the top 53
// bits of mt19937_64 output. The mt19937_64 stream is fixed by the standard,
// so given a seed the draws are bit-identical on every platform. The +0.5
// offset keeps both endpoints strictly excluded.
class UniformOpen01 {
public:
    explicit UniformOpen01(std::uint64_t seed) : eng_(seed) {}

    double next() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on (-1, 1); used for restart jitter.
    double next_symmetric() { return 2.0 * next() - 1.0; }

private:
    std::mt19937_64 eng_;
};

}  // namespace ltrc
