#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace vexle {

enum class Verdict { Holds, Violated, Indeterminate, ValueOnly, Error };

std::string_view verdict_name(Verdict v);

/// Outcome of one inequality check. `ratio` is bounding side over bounded
/// side, so it is >= 1 (up to slack) whenever the verdict is Holds.
struct InequalityReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double constant = 1;
    double ratio = 1;
    double slack = 0;
    Verdict verdict = Verdict::ValueOnly;
    std::string inputs_digest;
};

/// Verdict slack: an absolute floor plus a scale-aware term driven by the
/// relative quadrature estimate, capped at the documented grid-refinement
/// stability budget of 1e-3.
inline double verdict_slack(double lhs, double rhs, double quad_rel_err) {
    double scale = std::max(std::fabs(lhs), std::fabs(rhs));
    return 1e-6 + scale * std::min(1e-3, std::max(0.0, quad_rel_err));
}

inline double safe_ratio(double num, double den) {
    if (den == 0) return num == 0 ? 1.0 : std::numeric_limits<double>::infinity();
    return num / den;
}

/// FNV-1a digest of a human-readable input descriptor, hex-encoded.
std::string input_digest(std::string_view descriptor);

} // namespace vexle
