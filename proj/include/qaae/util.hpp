#pragma once

#include <cstdio>
#include <string>

namespace qaae {

// Fixed 17-significant-digit rendering: lossless for doubles and byte-stable
// across runs of the same binary.
inline std::string format_real17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace qaae
