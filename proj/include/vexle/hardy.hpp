#pragma once

#include <vector>

#include "vexle/report.hpp"
#include "vexle/space.hpp"

namespace vexle {

/// Averaging operator (1/x) * integral of f over (0, x). The cumulative sum
/// covers (a, x] including the sliver between the domain endpoint and the
/// first grid edge and the partial cell at x, so f = 1 maps to exactly 1.
GridFunction hardy_apply(const GridFunction& f);

/// Dual operator (1/x) * integral of f over (x, end of grid). Mass beyond
/// the grid's right truncation is not represented; callers concerned with
/// (0, inf) claims should inspect tail_decade_fraction of f.
GridFunction dual_hardy_apply(const GridFunction& f);

enum class HardyVariant { T6, T7, T8 };

/// Exponent used in the kernel powers 1/p': the provable form fixes
/// p' = p_lo/(p_lo - 1); the statement form uses the pointwise p'(t).
enum class ExponentVariant { Proof, Statement };

struct HardyConstants {
    double c_pq = 0;
    double d_p = 0;
    double chi_delta1 = 0; // some node pair has p(x) = q(y)
    double chi_delta2 = 0; // some node pair has p(x) != q(y)
    double chi_s1 = 0;     // some node attains p_lo (always true on a grid)
    double chi_s2 = 0;     // some node exceeds p_lo
    double q_spread_term = 0; // p_lo (1/q_lo - 1/q_hi)
    double p_spread_term = 0; // (p_hi - p_lo)/p_hi
};

/// c_pq = (chi_d1 + chi_d2 + p_lo(1/q_lo - 1/q_hi)) (chi_s1 + chi_s2) and
/// d_p = (1 + (p_hi - p_lo)/p_hi + chi_s1)^{1/p_lo}. Exponent ordering
/// between p and q is not required here (the constants are well defined
/// without it); the inequality check enforces it.
HardyConstants hardy_constants(const ExponentField& p, const ExponentField& q);

/// The weight functional on the right-hand side of the averaging-operator
/// norm inequalities: F(t) built from an inner variable-exponent norm of
/// w2(x)/x over (t, end) or (0, t), a kernel power, and 1/w1(t); then the
/// outer norm in L_r with r = p_lo p/(p - p_lo), split into an L_infinity
/// part over the nodes where p attains p_lo and an L_r part elsewhere.
struct WeightFunctional {
    HardyVariant variant = HardyVariant::T6;
    std::vector<double> ts;          // sweep points (the outer grid nodes)
    std::vector<double> inner_norms; // inner norm at each t
    std::vector<double> ratios;      // F(t)
    double linf_part = 0;
    double lr_part = 0;
    double value = 0;     // linf_part + lr_part
    bool admissible = false; // value finite
};

WeightFunctional rhs_weight_functional(HardyVariant variant, const WeightField& w1,
                                       const WeightField& w2, const ExponentField& p,
                                       const ExponentField& q,
                                       ExponentVariant ev = ExponentVariant::Proof,
                                       double tol = 1e-8);

struct HardyReport {
    InequalityReport report;
    HardyConstants constants;
    WeightFunctional functional;
    double f_norm = 0;
    double lhs_tail_fraction = 0; // outermost-decade share of the lhs modular
    double f_tail_fraction = 0;   // same for the modular of f
};

/// lhs = ||Hf|| (or ||H*f||) in (q, w2) against
/// rhs = p_lo^{1/p_lo} c_pq d_p F ||f|| in (p, w1). Requires p <= q < 1
/// nodewise and f nonnegative, nonincreasing (T6, T8) or nondecreasing (T7).
/// A holds verdict is downgraded to indeterminate when the outermost decade
/// of the right-truncated grid carries more than 1% of either norm integral.
HardyReport check_hardy(HardyVariant variant, const GridFunction& f, const WeightField& w1,
                        const WeightField& w2, const ExponentField& p, const ExponentField& q,
                        ExponentVariant ev = ExponentVariant::Proof, double tol = 1e-8);

/// Power-weight admissible region for the averaging operator with
/// w1 = x^alpha, w2 = x^{beta+1} and the two-level exponent profile
/// q = 1/4 below 1, 1/2 above: beta < -2, beta != -4 and
/// beta + 2 + 1/p' < alpha < min(1/p', beta + 4 + 1/p').
bool example42_admissible(double alpha, double beta, double p);

/// Pointwise bridge behind the operator bounds: at every node x,
/// (integral_0^x f)^s <= s * integral_0^x f^s k(t) dt with k = t^{s-1}
/// (kernel_at_origin, f nonincreasing) or k = (x-t)^{s-1} (f nondecreasing).
struct BridgeSides {
    std::vector<double> lhs;
    std::vector<double> rhs;
};

BridgeSides monotone_average_bridge(const GridFunction& f, double s, bool kernel_at_origin);

} // namespace vexle
