#include "qaae/rng.hpp"

namespace qaae {

namespace {

// Stafford mix13 finalizer, the same mixer splitmix64 uses.
std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xbf58476d1ce4e5b9ULL;
    z ^= z >> 27;
    z *= 0x94d049bb133111ebULL;
    z ^= z >> 31;
    return z;
}

} // namespace

std::uint64_t CounterRng::at(std::uint64_t seed, std::uint64_t stream,
                             std::uint64_t counter) {
    // Two mixing rounds over the three words; weyl constants keep
    // (seed, stream, counter) triples well separated.
    std::uint64_t key = mix64(seed + 0x9e3779b97f4a7c15ULL * (stream + 1));
    return mix64(key + 0xd1b54a32d192ed03ULL * (counter + 1));
}

std::uint64_t CounterRng::next_u64() {
    return at(seed_, stream_, counter_++);
}

double CounterRng::next_double() {
    // Top 53 bits -> [0, 1).
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::uniform(double lo, double hi) {
    return lo + (hi - lo) * next_double();
}

} // namespace qaae
