#include "vexle/space.hpp"

#include <cmath>
#include <limits>

#include "vexle/summation.hpp"

namespace vexle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kMaxBracket = 200;

void check_compatible(const GridFunction& f, const ExponentField& p, const WeightField& w) {
    if (f.size() != p.values().size() || f.size() != w.values().size())
        throw DomainError("function, exponent and weight must share one grid");
}

// Residual target for the unit-modular postcondition. The modular's
// derivative in lambda scales with the exponent supremum, so the achievable
// residual does too; above 1e7 the check is skipped (double resolution).
bool check_unit_residual(double residual, double tol, double p_hi) {
    if (p_hi > 1e7) return true;
    return residual <= 10.0 * tol * std::max(1.0, p_hi);
}

} // namespace

double modular_scaled(const GridFunction& f, const ExponentField& p, const WeightField& w,
                      double lambda) {
    check_compatible(f, p, w);
    if (!(lambda > 0)) throw DomainError("modular scale must be positive");
    const auto& weights = f.grid().weights();
    KahanSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::fabs(f[i]);
        if (v == 0.0) continue;
        double term = std::pow(v * w[i] / lambda, p[i]) * weights[i];
        if (!std::isfinite(term)) return kInf;
        acc.add(term);
    }
    return acc.value();
}

double modular(const GridFunction& f, const ExponentField& p, const WeightField& w) {
    return modular_scaled(f, p, w, 1.0);
}

double quasi_norm(const GridFunction& f, const ExponentField& p, const WeightField& w, double tol) {
    check_compatible(f, p, w);
    if (!(tol > 0) || tol >= 1) throw DomainError("tolerance must lie in (0, 1)");

    double peak = 0, width_at_peak = 0, total_width = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::fabs(f[i]) * w[i];
        total_width += f.grid().weights()[i];
        if (v > peak) {
            peak = v;
            width_at_peak = f.grid().weights()[i];
        }
    }
    if (peak == 0.0) return 0.0;

    double lo, hi;
    double i0 = modular(f, p, w);
    if (i0 > 0.0 && std::isfinite(i0)) {
        // Termwise, lambda^{-p_hi} I(f) <= I(f/lambda) <= lambda^{-p_lo} I(f)
        // for lambda >= 1 (reversed below 1), so the unit crossing lies between
        // I(f)^{1/p_lo} and I(f)^{1/p_hi}. This reaches norms hundreds of orders
        // of magnitude away from 1 where a doubling search would not.
        double log_i0 = std::log(i0);
        double e1 = std::min(700.0, std::max(-700.0, log_i0 / p.lo()));
        double e2 = std::min(700.0, std::max(-700.0, log_i0 / p.hi()));
        lo = 0.5 * std::exp(std::min(e1, e2));
        hi = 2.0 * std::exp(std::max(e1, e2));
    } else {
        // I(f) over- or underflowed (huge exponents). Envelope bracket:
        // at lambda = peak * max(1, W)^{1/p_lo} every term is at most
        // width * max(1, W)^{-p/p_lo} <= width / max(1, W), so I <= 1; at
        // lambda = peak * min(1, width_at_peak)^{1/p_lo} the peak term alone
        // is at least 1.
        hi = peak * std::pow(std::max(1.0, total_width), 1.0 / p.lo());
        if (!std::isfinite(hi)) hi = std::numeric_limits<double>::max() / 4;
        lo = std::max(0.5 * peak * std::pow(std::min(1.0, width_at_peak), 1.0 / p.lo()),
                      std::numeric_limits<double>::min());
    }
    // The closed-form bounds can land on the wrong side after clamping or
    // rounding; expand until verified. I(f/lambda) is strictly decreasing.
    int expand = 0;
    while (modular_scaled(f, p, w, hi) > 1.0) {
        hi *= 2;
        if (++expand > kMaxBracket || !std::isfinite(hi))
            throw NumericError("quasi-norm bracket failed: modular stays above 1");
    }
    expand = 0;
    while (modular_scaled(f, p, w, lo) <= 1.0) {
        lo *= 0.5;
        if (++expand > kMaxBracket || lo <= 0)
            throw NumericError("quasi-norm bracket failed: modular stays below 1");
    }

    while (hi - lo > tol * hi) {
        double mid = hi > 2 * lo ? std::sqrt(lo) * std::sqrt(hi) : 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (modular_scaled(f, p, w, mid) <= 1.0 ? hi : lo) = mid;
    }
    double best = 0.5 * (lo + hi);
    // Polish: keep bisecting on the residual until it clears the
    // postcondition or the bracket hits machine width.
    double residual = std::fabs(modular_scaled(f, p, w, best) - 1.0);
    for (int i = 0; i < 80 && residual > 5.0 * tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (modular_scaled(f, p, w, mid) <= 1.0 ? hi : lo) = mid;
        best = 0.5 * (lo + hi);
        residual = std::fabs(modular_scaled(f, p, w, best) - 1.0);
    }
    if (!check_unit_residual(residual, tol, p.hi()))
        throw NumericError("quasi-norm postcondition failed: modular at the norm is not within 10*tol of 1");
    return best;
}

namespace {

double conj_modular_impl(const GridFunction& g, const std::vector<double>& conj,
                         const WeightField& w, double mu) {
    if (!(mu > 0)) throw DomainError("conjugate modular scale must be positive");
    const auto& weights = g.grid().weights();
    KahanSum acc;
    for (std::size_t i = 0; i < g.size(); ++i) {
        double v = std::fabs(g[i]);
        if (!(v > 0)) throw DomainError("conjugate modular requires g nonzero at every node");
        // Reciprocal weight: |g| w^{-1} scaled by 1/mu, raised to p' < 0.
        double term = std::pow(v / (w[i] * mu), conj[i]) * weights[i];
        if (!std::isfinite(term)) return kInf;
        acc.add(term);
    }
    return acc.value();
}

} // namespace

double conjugate_modular(const GridFunction& g, const ExponentField& p, const WeightField& w,
                         double mu) {
    check_compatible(g, p, w);
    return conj_modular_impl(g, ConjugateExponent::of(p).values, w, mu);
}

double conjugate_norm(const GridFunction& g, const ExponentField& p, const WeightField& w,
                      double tol) {
    check_compatible(g, p, w);
    if (!(tol > 0) || tol >= 1) throw DomainError("tolerance must lie in (0, 1)");
    ConjugateExponent conj = ConjugateExponent::of(p);
    double max_abs_conj = 0;
    for (double c : conj.values) max_abs_conj = std::max(max_abs_conj, std::fabs(c));
    auto mod = [&](double mu) { return conj_modular_impl(g, conj.values, w, mu); };

    // The conjugate modular is increasing in mu: bracket the crossing of 1.
    double lo = 0, hi = 0;
    double mu = 1.0;
    if (mod(mu) <= 1.0) {
        lo = mu;
        for (int i = 0; i < kMaxBracket; ++i) {
            mu *= 2;
            if (mod(mu) > 1.0) {
                hi = mu;
                break;
            }
            lo = mu;
        }
        if (hi == 0) throw NumericError("conjugate-norm bracket failed: modular never exceeds 1");
    } else {
        hi = mu;
        for (int i = 0; i < kMaxBracket; ++i) {
            mu *= 0.5;
            if (mod(mu) <= 1.0) {
                lo = mu;
                break;
            }
            hi = mu;
        }
        if (lo == 0) throw NumericError("conjugate-norm bracket failed: modular never drops to 1");
    }

    while (hi - lo > tol * hi) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (mod(mid) <= 1.0 ? lo : hi) = mid;
    }
    double best = 0.5 * (lo + hi);
    double residual = std::fabs(mod(best) - 1.0);
    for (int i = 0; i < 80 && residual > 5.0 * tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (mod(mid) <= 1.0 ? lo : hi) = mid;
        best = 0.5 * (lo + hi);
        residual = std::fabs(mod(best) - 1.0);
    }
    if (!check_unit_residual(residual, tol, max_abs_conj))
        throw NumericError("conjugate-norm postcondition failed: modular at the norm is not within 10*tol of 1");
    return best;
}

} // namespace vexle
