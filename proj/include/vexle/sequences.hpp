#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "vexle/grid.hpp"

namespace vexle {

/// Nonincreasing exponent sequence with values in (0, 1] and a positive
/// lower bound p_lo below every term (defaults to the last term).
struct ExponentSeq {
    std::vector<double> values;
    double p_lo = 0;

    static ExponentSeq make(std::vector<double> values, std::optional<double> p_lo = std::nullopt);
};

enum class SequenceMode {
    FiniteM, // left exponent p_m: the finite-m form
    Limit    // left exponent p_lo: the series form
};

/// Three-way chain for nonnegative x with x_n^{p_n} nonincreasing:
/// (sum x_n^{p_n/e})^e <= sum x_n^{p_n}[n^{p_n} - (n-1)^{p_n}] <= sum x_n^{p_n}
/// with e = p_m or p_lo per mode.
struct SequenceReport {
    std::size_t m = 0;
    double lhs = 0;
    double mid = 0;
    double rhs = 0;
    double slack = 0;
    bool left_holds = false;
    bool right_holds = false;
};

SequenceReport check_sequence_inequality(const std::vector<double>& x, const ExponentSeq& p,
                                         SequenceMode mode);

/// Term of the square-supported counterexample sequence: n^{-p_lo/(2 p_n)}
/// when n is a perfect square, 0 otherwise.
double square_support_term(std::uint64_t n, double p_n, double p_lo);

struct DivergenceCheckpoint {
    std::uint64_t K = 0;
    double lhs_partial = 0; // (sum_{n<=K} x_n^{p_n/p_lo})^{p_lo}
    double rhs_partial = 0; // sum_{n<=K} x_n^{p_n}[n^{p_n} - (n-1)^{p_n}]
    double ratio = 0;       // lhs_partial / rhs_partial
};

struct DivergenceEvidence {
    std::vector<DivergenceCheckpoint> checkpoints;
    std::uint64_t evidence_K = 0; // smallest K with lhs >= threshold * rhs; 0 if not reached
    double threshold = 2.0;
    double p_lo = 0;
    double p_hi = 0;
};

/// Partial sums of the counterexample: the left side of the chain diverges
/// (harmonic) while the middle stays bounded, witnessing that the
/// monotonicity hypothesis on x_n^{p_n} cannot be dropped. Requires
/// p_hi < (p_lo + 1)/2 with p_hi = p(1). Work is O(sqrt(K_max)).
DivergenceEvidence example41_sequence(const std::function<double(std::uint64_t)>& p_of_n,
                                      double p_lo, std::uint64_t k_max,
                                      const std::vector<std::uint64_t>& checkpoints,
                                      double threshold = 2.0);

} // namespace vexle
