// Deterministic random number generation.
//
// std::mt19937 would be reproducible, but the std distributions are not
// specified bit-for-bit across standard libraries. Since identical seeds must
// produce byte-identical reports, both the generator (xoshiro256**) and the
// uniform-double construction are implemented explicitly here.
#pragma once

#include <cstdint>

#include "qsec/vec3.hpp"

namespace qsec {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

// Stateless hash of a (seed, stream...) tuple; used where values must depend
// only on indices, not on call order (e.g. per-vertex perturbation offsets).
inline std::uint64_t mix64(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0) {
    std::uint64_t s = a;
    s ^= 0xD1B54A32D192ED03ull + splitmix64(s);
    s ^= b + 0x8CB92BA72F3D8DD7ull;
    std::uint64_t t = splitmix64(s);
    s = t ^ (c * 0x2545F4914F6CDD1Dull + 0x9E6C63D0876A9A62ull);
    return splitmix64(s);
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto& w : s_) w = splitmix64(sm);
    }

    std::uint64_t next_u64() {
        std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
        std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform in [0, 1): 53 explicit mantissa bits, identical on every platform.
    double uniform01() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Uniform on [-1, 1].
    double symmetric() { return 2.0 * uniform01() - 1.0; }

    std::uint64_t below(std::uint64_t n) { return next_u64() % n; }

    Vec3 box_point(double half) { return {uniform(-half, half), uniform(-half, half), uniform(-half, half)}; }

    // Uniform direction via rejection sampling from the cube.
    Vec3 unit_vector() {
        for (;;) {
            Vec3 v = box_point(1.0);
            double n2 = norm2(v);
            if (n2 > 1e-4 && n2 <= 1.0) return v / std::sqrt(n2);
        }
    }

private:
    static std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
    std::uint64_t s_[4];
};

}  // namespace qsec
