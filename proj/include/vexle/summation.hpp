#pragma once

namespace vexle {

/// Kahan compensated accumulator. All integral/series sums in the library go
/// through this so that divergence evidence and telescoping identities are
/// not artifacts of naive float accumulation.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double v) {
        double y = v - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    double value() const { return sum; }
};

} // namespace vexle
