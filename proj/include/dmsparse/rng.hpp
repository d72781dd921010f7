#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace dmsparse {

// SplitMix64 step. Used to derive independent stream seeds from a master
// seed so that per-frame / per-trial generators are reproducible no matter
// how the work is scheduled.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master,
                                 std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t id : path) {
        s ^= id + 0x9e3779b97f4a7c15ULL + (s << 6) + (s >> 2);
        out = splitmix64(s);
    }
    return out;
}

// Seeded generator with explicit, implementation-independent draw logic.
// std::uniform_real_distribution and friends are not guaranteed to produce
// the same stream across standard libraries, so the few primitives needed
// here are spelled out.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    std::uint64_t bits() { return gen_(); }

    // Uniform in [0, 1) with 53 random bits.
    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Fair ±1.
    int sign() { return (gen_() >> 63) ? 1 : -1; }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(gen_() % static_cast<std::uint64_t>(n));
    }

private:
    std::mt19937_64 gen_;
};

}  // namespace dmsparse
