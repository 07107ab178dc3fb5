#pragma once

#include <vector>

#include "vexle/space.hpp"

namespace vexle {

/// Result of the unit-ball non-convexity probe: m disjoint pieces f_k with
/// I(f_k) = eps each, whose average g_m = (1/m) sum f_k has
/// I(g_m) >= m^(1-p_hi) eps, escaping every ball as m grows.
struct ConvexityProbeResult {
    int m = 0;
    double epsilon = 0;
    std::vector<double> piece_modulars; // each equals eps up to rounding
    double average_modular = 0;         // I(g_m)
    double lower_bound = 0;             // m^(1-p_hi) eps
    double p_hi = 0;
};

/// Builds its own uniform grid of m equal cells (points/m nodes per cell,
/// at least one) over the domain and evaluates the construction
///   f_k = (eps / W_k)^(1/p(x)) on cell k, W_k = integral_{cell k} w^p(x).
ConvexityProbeResult nonconvexity_probe(const Interval& domain, int points, const Expr& p_expr,
                                        const Expr& w_expr, int m, double eps);

/// Smallest m (up to m_max) whose average escapes the modular ball of radius
/// R, i.e. I(g_m) >= R (compared with a 1e-9 relative tolerance in favor of
/// "reached"). Returns 0 if not reached by m_max.
int nonconvexity_escape(const Interval& domain, int points, const Expr& p_expr, const Expr& w_expr,
                        double eps, double radius, int m_max);

/// Location t splitting the modular mass of f at the given fraction:
/// the cumulative modular over (a, t) equals target * I(f), with linear
/// interpolation inside the boundary cell. Requires 0 < target < 1 and a
/// finite positive modular.
double find_modular_split(const GridFunction& f, const ExponentField& p, const WeightField& w,
                          double target, double tol = 1e-9);

/// Halving/doubling sequence witnessing a trivial conjugate space:
/// each step restricts f_n to the half of its support carrying at most half
/// the modular and doubles it there. Supports are tracked as real intervals
/// with fractional boundary-cell coverage, so each step contracts the
/// modular by exactly 2^(p_hi - 1) up to the split tolerance.
struct DualProbeResult {
    std::vector<double> modulars;     // I(f_0), ..., I(f_N)
    std::vector<double> split_points; // t_1, ..., t_N
    std::vector<double> bounds;       // 2^(n(p_hi-1)) I(f_0)
    double p_hi = 0;
    double max_step_ratio = 0;        // max over steps of I(f_{n+1}) / (2^(p_hi-1) I(f_n))
    bool contraction_ok = false;      // every step ratio <= 1 + 1e-6
};

DualProbeResult dual_triviality_sequence(const GridFunction& f0, const ExponentField& p,
                                         const WeightField& w, int steps, double tol = 1e-9);

} // namespace vexle
