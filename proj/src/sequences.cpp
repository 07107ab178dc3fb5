#include "vexle/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "vexle/summation.hpp"

namespace vexle {

namespace {

// n^p - (n-1)^p without the cancellation of the direct difference.
double power_step(std::uint64_t n, double p) {
    if (n == 1) return 1.0;
    double nd = static_cast<double>(n);
    return -std::pow(nd, p) * std::expm1(p * std::log1p(-1.0 / nd));
}

} // namespace

ExponentSeq ExponentSeq::make(std::vector<double> values, std::optional<double> p_lo) {
    if (values.empty()) throw DomainError("exponent sequence must be nonempty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0) || !(values[i] <= 1))
            throw DomainError("exponent sequence values must lie in (0, 1], index " +
                              std::to_string(i + 1));
        if (i > 0 && values[i] > values[i - 1])
            throw DomainError("exponent sequence must be nonincreasing, index " +
                              std::to_string(i + 1));
    }
    ExponentSeq seq;
    seq.p_lo = p_lo.value_or(values.back());
    if (!(seq.p_lo > 0) || seq.p_lo > values.back() + 1e-15)
        throw DomainError("exponent lower bound must be positive and below every term");
    seq.values = std::move(values);
    return seq;
}

SequenceReport check_sequence_inequality(const std::vector<double>& x, const ExponentSeq& p,
                                         SequenceMode mode) {
    std::size_t m = x.size();
    if (m == 0 || m != p.values.size())
        throw DomainError("sequence and exponents must have equal positive length");

    double prev_power = 0;
    for (std::size_t i = 0; i < m; ++i) {
        if (!(x[i] >= 0) || !std::isfinite(x[i]))
            throw DomainError("sequence terms must be nonnegative, index " + std::to_string(i + 1));
        double power = std::pow(x[i], p.values[i]);
        if (i > 0 && power > prev_power)
            throw DomainError("x_n^{p_n} must be nonincreasing, first violation at index " +
                              std::to_string(i + 1));
        prev_power = power;
    }

    double e = mode == SequenceMode::FiniteM ? p.values.back() : p.p_lo;
    KahanSum left_sum, mid_sum, right_sum;
    for (std::size_t i = 0; i < m; ++i) {
        double power = std::pow(x[i], p.values[i]);
        left_sum.add(std::pow(x[i], p.values[i] / e));
        mid_sum.add(power * power_step(i + 1, p.values[i]));
        right_sum.add(power);
    }

    SequenceReport rep;
    rep.m = m;
    rep.lhs = std::pow(left_sum.value(), e);
    rep.mid = mid_sum.value();
    rep.rhs = right_sum.value();
    rep.slack = 1e-12 * std::max({1.0, rep.lhs, rep.mid, rep.rhs});
    rep.left_holds = rep.lhs <= rep.mid + rep.slack;
    rep.right_holds = rep.mid <= rep.rhs + rep.slack;
    return rep;
}

double square_support_term(std::uint64_t n, double p_n, double p_lo) {
    auto k = static_cast<std::uint64_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (k * k != n) return 0.0;
    return std::pow(static_cast<double>(n), -p_lo / (2.0 * p_n));
}

DivergenceEvidence example41_sequence(const std::function<double(std::uint64_t)>& p_of_n,
                                      double p_lo, std::uint64_t k_max,
                                      const std::vector<std::uint64_t>& checkpoints,
                                      double threshold) {
    if (!(p_lo > 0) || !(p_lo < 1)) throw DomainError("exponent lower bound must lie in (0, 1)");
    if (k_max < 1) throw DomainError("need at least one term");
    double p_hi = p_of_n(1);
    if (!(p_hi < 0.5 * (p_lo + 1.0)))
        throw DomainError("counterexample needs p_hi < (p_lo + 1)/2");

    std::vector<std::uint64_t> cps = checkpoints;
    std::sort(cps.begin(), cps.end());
    cps.erase(std::unique(cps.begin(), cps.end()), cps.end());

    DivergenceEvidence ev;
    ev.threshold = threshold;
    ev.p_lo = p_lo;
    ev.p_hi = p_hi;

    // Only the perfect squares contribute, so the sweep advances k and
    // flushes any requested checkpoints passed along the way.
    KahanSum left_sum, mid_sum;
    std::size_t next_cp = 0;
    auto flush = [&](std::uint64_t K) {
        while (next_cp < cps.size() && cps[next_cp] < K) {
            DivergenceCheckpoint cp;
            cp.K = cps[next_cp];
            cp.lhs_partial = std::pow(left_sum.value(), p_lo);
            cp.rhs_partial = mid_sum.value();
            cp.ratio = cp.lhs_partial / cp.rhs_partial;
            ev.checkpoints.push_back(cp);
            ++next_cp;
        }
    };

    for (std::uint64_t k = 1; k <= k_max; ++k) {
        std::uint64_t n = k * k;
        flush(n);
        double p_n = p_of_n(n);
        if (!(p_n >= p_lo) || !(p_n <= p_hi))
            throw DomainError("exponent generator leaves [p_lo, p_hi] at n = " + std::to_string(n));
        double x_n = square_support_term(n, p_n, p_lo);
        left_sum.add(std::pow(x_n, p_n / p_lo));
        mid_sum.add(std::pow(x_n, p_n) * power_step(n, p_n));
        if (ev.evidence_K == 0 && mid_sum.value() > 0 &&
            std::pow(left_sum.value(), p_lo) >= threshold * mid_sum.value())
            ev.evidence_K = n;
    }
    flush(std::numeric_limits<std::uint64_t>::max());
    return ev;
}

} // namespace vexle
