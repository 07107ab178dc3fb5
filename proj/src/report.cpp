#include "vexle/report.hpp"

#include <cstdio>

namespace vexle {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Violated: return "violated";
        case Verdict::Indeterminate: return "indeterminate";
        case Verdict::ValueOnly: return "value-only";
        case Verdict::Error: return "error";
    }
    return "?";
}

std::string input_digest(std::string_view descriptor) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : descriptor) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace vexle
