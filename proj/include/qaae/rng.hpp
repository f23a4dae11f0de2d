#pragma once

#include <cstdint>

namespace qaae {

// Counter-based generator: every draw is a pure hash of (seed, stream, counter),
// so runs are reproducible and independent streams never share state.
// Streams keep unrelated consumers (init angles, ancilla draws, shot noise)
// decoupled even when the number of draws in one of them changes.
class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream)
        : seed_(seed), stream_(stream) {}

    // Next raw 64-bit word; advances the counter.
    std::uint64_t next_u64();

    // Uniform double in [0, 1) with 53 random bits.
    double next_double();

    // Uniform double in [lo, hi).
    double uniform(double lo, double hi);

    // Stateless access for callers that index draws explicitly.
    static std::uint64_t at(std::uint64_t seed, std::uint64_t stream,
                            std::uint64_t counter);

    std::uint64_t counter() const { return counter_; }

private:
    std::uint64_t seed_ = 0;
    std::uint64_t stream_ = 0;
    std::uint64_t counter_ = 0;
};

// Stream ids used by the driver. Fixed so that output is stable across
// code changes that add or remove draws in one phase.
namespace rng_stream {
inline constexpr std::uint64_t kInit = 0;     // parameter initialization
inline constexpr std::uint64_t kAncilla = 1;  // sampled measurement outcomes
inline constexpr std::uint64_t kShots = 2;    // finite-shot estimators
} // namespace rng_stream

} // namespace qaae
