#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace impnoise {

// splitmix64 step; used both as a stream-id mixer and to expand seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Derive a child seed from (seed, id0, id1, ...). Independent ids give
// independent streams; the derivation is pure so results are reproducible.
inline std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> ids) {
    std::uint64_t s = seed;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t id : ids) {
        s ^= id + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        out = splitmix64(s);
    }
    return out;
}

// Seeded uniform source with an explicit bit-to-double mapping, so a given
// seed produces the same sample path on every standards-conforming build.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    // Strictly inside (0,1): ((x>>11) + 0.5) * 2^-53.
    double uniform01() {
        const std::uint64_t x = eng_();
        return (static_cast<double>(x >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on the open interval (-pi/2, pi/2).
    double uniform_half_pi() {
        return 3.14159265358979323846 * (uniform01() - 0.5);
    }

    // Unit-mean exponential.
    double exponential() { return -std::log(uniform01()); }

    std::uint64_t raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

}  // namespace impnoise
