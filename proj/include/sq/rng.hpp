#pragma once

#include <cmath>
#include <cstdint>

namespace sq {

// Counter-based random numbers.  Every draw is a pure function of
// (seed, tag, counter, slot), so chains are reproducible bit for bit, chains
// can run concurrently without shared state, and two solvers fed the same
// coordinates consume identical noise.
namespace rng {

inline uint64_t splitmix(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t mix(uint64_t seed, uint64_t tag, uint64_t counter, uint64_t slot) {
    uint64_t h = splitmix(seed ^ 0x8af2'51fe'9c3a'11d7ULL);
    h = splitmix(h ^ tag);
    h = splitmix(h ^ counter);
    h = splitmix(h ^ slot);
    return h;
}

// uniform in (0,1], never 0
inline double uniform(uint64_t seed, uint64_t tag, uint64_t counter, uint64_t slot) {
    uint64_t h = mix(seed, tag, counter, slot);
    return (static_cast<double>(h >> 11) + 1.0) * 0x1.0p-53;
}

struct GaussPair {
    double a;
    double b;
};

// Box-Muller from two counter draws
inline GaussPair gauss_pair(uint64_t seed, uint64_t tag, uint64_t counter, uint64_t slot) {
    double u1 = uniform(seed, tag, counter, slot * 2);
    double u2 = uniform(seed, tag, counter, slot * 2 + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    double th = 2.0 * M_PI * u2;
    return {r * std::cos(th), r * std::sin(th)};
}

inline double gauss(uint64_t seed, uint64_t tag, uint64_t counter, uint64_t slot) {
    return gauss_pair(seed, tag, counter, slot).a;
}

// stream tags
constexpr uint64_t TAG_GFF = 0x01;
constexpr uint64_t TAG_DYN = 0x02;
constexpr uint64_t TAG_MALA_STEP = 0x03;
constexpr uint64_t TAG_MALA_ACCEPT = 0x04;

// Derives a per-chain seed from a base seed.
inline uint64_t chain_seed(uint64_t base, int chain) {
    return splitmix(splitmix(base ^ 0x5bd1'e995'97f4'a7c1ULL) + static_cast<uint64_t>(chain));
}

// Grid-independent key of an integer frequency vector, shared across
// refinement levels so a mode keeps its noise when n grows.
inline uint64_t mode_key(int kx, int ky) {
    auto enc = [](int k) { return static_cast<uint64_t>(static_cast<uint32_t>(k + (1 << 20))); };
    return (enc(kx) << 21) | enc(ky);
}

}  // namespace rng
}  // namespace sq
