#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qaae {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Fast self-contained invariant suite: branch probabilities, the one-round
// gain law, reflection and propagator gate forms, learning deviation bounds,
// depth accounting and byte-level reproducibility. Runs in seconds.
std::vector<CheckResult> run_verification(std::uint64_t seed);

} // namespace qaae
