#pragma once

#include <cstdint>
#include <random>

namespace svtail {

// Deterministic random source.
//
// The engine is std::mt19937_64, whose output sequence is pinned by the
// standard. The distributions are hand-rolled on top of the raw engine
// because std::uniform_real_distribution and std::normal_distribution are
// implementation-defined and would break byte-for-byte reproducibility
// across standard libraries. Normal variates use the Box-Muller transform
// with the second variate cached.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 bits of precision.
    double uniform01() {
        return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740992.0);
    }

    // Uniform on [lo, hi).
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * uniform01();
    }

    // Uniform integer on [lo, hi] via rejection-free scaling of uniform01().
    // Fine for the small ranges used here; not suitable for ranges near 2^53.
    std::uint64_t uniform_int(std::uint64_t lo, std::uint64_t hi) {
        return lo + static_cast<std::uint64_t>(uniform01() * static_cast<double>(hi - lo + 1));
    }

    // Standard normal via Box-Muller.
    double normal();

private:
    std::mt19937_64 engine_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace svtail
