#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace bds {

// splitmix64 finalizer, used to derive well-separated substream seeds.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Substream purposes per UE. Each UE owns independent streams so that adding
// a UE to a scenario never changes the draws seen by existing UEs.
enum class StreamPurpose : std::uint64_t {
    Init = 0,     // initial position, initial battery, fixed shadowing
    Traffic = 1,  // burst inter-arrivals and sizes
    Mobility = 2, // first-segment coin flip, segment parameters
    Shadow = 3,   // per-burst shadowing realizations
};

inline std::uint64_t substream_seed(std::uint64_t base, std::uint64_t lane,
                                    StreamPurpose purpose) {
    std::uint64_t s = mix64(base);
    s = mix64(s ^ (lane + 0x9e3779b97f4a7c15ULL));
    s = mix64(s ^ (static_cast<std::uint64_t>(purpose) + 0xbf58476d1ce4e5b9ULL));
    return s;
}

// Seed for replication r derived from the master seed; both arms of a paired
// coop/non-coop comparison reuse the same replication seed (common random
// numbers).
inline std::uint64_t replication_seed(std::uint64_t master_seed, std::uint32_t replication) {
    return mix64(mix64(master_seed) ^ (replication + 0x94d049bb133111ebULL));
}

// Deterministic random stream: mt19937_64 engine (bit-exact per the C++
// standard) with explicit inverse-CDF samplers, since std::*_distribution
// results are implementation-defined and would break byte-identical runs
// across standard libraries.
class RandomStream {
public:
    RandomStream() : engine_(0) {}
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform on [0, 1) with 53-bit resolution.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    // Uniform on (0, 1), strictly open on both ends.
    double uniform01_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    // Uniform on (0, 1].
    double uniform01_positive() { return 1.0 - uniform01(); }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    // Exponential with the given mean; strictly positive.
    double exponential(double mean) {
        if (mean <= 0.0) throw std::invalid_argument("exponential: mean must be > 0");
        return -mean * std::log(uniform01_open());
    }

    // Zero-mean normal via Box-Muller. No spare value is cached, so every
    // call consumes exactly two engine draws.
    double normal(double sigma) {
        const double u1 = uniform01_open();
        const double u2 = uniform01();
        return sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // Geometric on {1, 2, 3, ...} with success probability p; mean 1/p.
    std::uint64_t geometric1(double p) {
        if (p <= 0.0 || p > 1.0) throw std::invalid_argument("geometric1: p must be in (0, 1]");
        if (p == 1.0) return 1;
        const double u = uniform01_open();
        const double k = std::floor(std::log(u) / std::log1p(-p));
        return 1 + static_cast<std::uint64_t>(k);
    }

    friend bool operator==(const RandomStream& a, const RandomStream& b) {
        return a.engine_ == b.engine_;
    }

private:
    std::mt19937_64 engine_;
};

} // namespace bds
