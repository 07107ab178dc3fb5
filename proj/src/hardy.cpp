#include "vexle/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "vexle/summation.hpp"

namespace vexle {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExponentTol = 1e-10;

void check_positive_axis(const GridFunction& f) {
    double a = f.grid().domain().a;
    if (!std::isfinite(a) || a < 0)
        throw DomainError("averaging operators need a domain contained in (0, inf)");
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i] < 0) throw DomainError("averaging operators require a nonnegative function");
}

const char* variant_name(HardyVariant v) {
    switch (v) {
        case HardyVariant::T6: return "hardy_T6";
        case HardyVariant::T7: return "hardy_T7";
        case HardyVariant::T8: return "hardy_T8";
    }
    return "hardy";
}

} // namespace

GridFunction hardy_apply(const GridFunction& f) {
    check_positive_axis(f);
    const Grid& g = f.grid();
    const auto& nodes = g.nodes();
    const auto& edges = g.edges();
    const auto& widths = g.weights();
    std::vector<double> out(f.size());
    KahanSum cum;
    if (!nodes.empty()) cum.add(f[0] * (edges.front() - g.domain().a)); // left sliver
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (!(nodes[i] > 0)) throw DomainError("averaging operators need strictly positive nodes");
        out[i] = (cum.value() + f[i] * (nodes[i] - edges[i])) / nodes[i];
        cum.add(f[i] * widths[i]);
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

GridFunction dual_hardy_apply(const GridFunction& f) {
    check_positive_axis(f);
    const Grid& g = f.grid();
    const auto& nodes = g.nodes();
    const auto& edges = g.edges();
    const auto& widths = g.weights();
    std::vector<double> out(f.size());
    KahanSum tail;
    for (std::size_t k = f.size(); k-- > 0;) {
        if (!(nodes[k] > 0)) throw DomainError("averaging operators need strictly positive nodes");
        out[k] = (tail.value() + f[k] * (edges[k + 1] - nodes[k])) / nodes[k];
        tail.add(f[k] * widths[k]);
    }
    return GridFunction(f.grid_ptr(), std::move(out));
}

HardyConstants hardy_constants(const ExponentField& p, const ExponentField& q) {
    HardyConstants c;
    c.chi_s1 = 1.0; // the node minimum of p is attained
    for (double v : p.values()) {
        if (v - p.lo() > kExponentTol) {
            c.chi_s2 = 1.0;
            break;
        }
    }

    std::vector<double> qs = q.values();
    std::sort(qs.begin(), qs.end());
    for (double v : p.values()) {
        auto it = std::lower_bound(qs.begin(), qs.end(), v);
        if ((it != qs.end() && *it - v <= kExponentTol) ||
            (it != qs.begin() && v - *(it - 1) <= kExponentTol)) {
            c.chi_delta1 = 1.0;
            break;
        }
    }
    bool all_pairs_equal = std::max(p.hi() - q.lo(), q.hi() - p.lo()) <= kExponentTol;
    c.chi_delta2 = all_pairs_equal ? 0.0 : 1.0;

    c.q_spread_term = p.lo() * (1.0 / q.lo() - 1.0 / q.hi());
    c.p_spread_term = (p.hi() - p.lo()) / p.hi();
    c.c_pq = (c.chi_delta1 + c.chi_delta2 + c.q_spread_term) * (c.chi_s1 + c.chi_s2);
    c.d_p = std::pow(1.0 + c.p_spread_term + c.chi_s1, 1.0 / p.lo());
    return c;
}

WeightFunctional rhs_weight_functional(HardyVariant variant, const WeightField& w1,
                                       const WeightField& w2, const ExponentField& p,
                                       const ExponentField& q, ExponentVariant ev, double tol) {
    std::size_t n = p.values().size();
    if (w1.values().size() != n || w2.values().size() != n || q.values().size() != n)
        throw DomainError("weight functional inputs must share one grid");
    if (!(p.hi() < 1)) throw DomainError("weight functional needs exponents below 1");

    const Grid& grid = p.grid();
    const auto& nodes = grid.nodes();
    double kappa_proof = (p.lo() - 1.0) / p.lo(); // 1/p' at the exponent infimum

    WeightFunctional out;
    out.variant = variant;
    out.ts = nodes;
    out.inner_norms.resize(n);
    out.ratios.resize(n);

    for (std::size_t k = 0; k < n; ++k) {
        double t = nodes[k];
        double kappa = ev == ExponentVariant::Proof ? kappa_proof : (p[k] - 1.0) / p[k];
        GridPtr sub = variant == HardyVariant::T8 ? grid.restrict_below(t) : grid.restrict_above(t);
        std::size_t m = sub->size();
        // Sub-grid cells keep their original samples: they are the trailing
        // cells for the tail restriction and the leading ones for (0, t).
        std::size_t base = variant == HardyVariant::T8 ? 0 : n - m;

        double inner = 0;
        if (m > 0) {
            bool finite = true;
            std::vector<double> vals(m);
            for (std::size_t s = 0; s < m; ++s) {
                double x = sub->nodes()[s];
                double v = w2[base + s] / x;
                if (variant == HardyVariant::T7) v *= std::pow(x - t, kappa);
                if (variant == HardyVariant::T8) v *= std::pow(t - x, kappa);
                if (!std::isfinite(v)) {
                    finite = false;
                    break;
                }
                vals[s] = v;
            }
            if (finite) {
                auto qsub = ExponentField::from_values(
                    sub, std::vector<double>(q.values().begin() + base,
                                             q.values().begin() + base + m),
                    q.regime());
                try {
                    inner = quasi_norm(GridFunction(sub, std::move(vals)), qsub,
                                       WeightField::ones(sub), tol);
                } catch (const NumericError&) {
                    inner = kInf;
                }
            } else {
                inner = kInf;
            }
        }
        out.inner_norms[k] = inner;
        double ratio = inner / w1[k];
        if (variant == HardyVariant::T6 && inner > 0) ratio *= std::pow(t, kappa);
        out.ratios[k] = ratio;
    }

    // Outer norm in L_r with r = p_lo p/(p - p_lo): L-infinity over the
    // nodes where p attains its infimum, L_r over the rest.
    bool all_finite = true;
    std::vector<double> lr_nodes, lr_widths, lr_vals, lr_exps;
    for (std::size_t k = 0; k < n; ++k) {
        if (!std::isfinite(out.ratios[k])) {
            all_finite = false;
            break;
        }
        if (p[k] - p.lo() <= kExponentTol) {
            out.linf_part = std::max(out.linf_part, out.ratios[k]);
        } else {
            lr_nodes.push_back(nodes[k]);
            lr_widths.push_back(grid.weights()[k]);
            lr_vals.push_back(out.ratios[k]);
            lr_exps.push_back(p.lo() * p[k] / (p[k] - p.lo()));
        }
    }
    if (!all_finite) {
        out.linf_part = kInf;
        out.value = kInf;
        out.admissible = false;
        return out;
    }
    if (!lr_vals.empty()) {
        GridPtr sub = Grid::from_cells(grid.domain(), std::move(lr_nodes), std::move(lr_widths));
        auto r = ExponentField::from_values(sub, std::move(lr_exps), ExponentRegime::GeneralPositive);
        try {
            out.lr_part = quasi_norm(GridFunction(sub, std::move(lr_vals)), r,
                                     WeightField::ones(sub), tol);
        } catch (const NumericError&) {
            out.lr_part = kInf;
        }
    }
    out.value = out.linf_part + out.lr_part;
    out.admissible = std::isfinite(out.value);
    return out;
}

namespace {

std::vector<double> modular_integrand(const GridFunction& f, const ExponentField& p,
                                      const WeightField& w, double lambda) {
    std::vector<double> vals(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::fabs(f[i]);
        vals[i] = v == 0 ? 0.0 : std::pow(v * w[i] / lambda, p[i]);
    }
    return vals;
}

} // namespace

HardyReport check_hardy(HardyVariant variant, const GridFunction& f, const WeightField& w1,
                        const WeightField& w2, const ExponentField& p, const ExponentField& q,
                        ExponentVariant ev, double tol) {
    std::size_t n = f.size();
    if (w1.values().size() != n || w2.values().size() != n || p.values().size() != n ||
        q.values().size() != n)
        throw DomainError("operands must share one grid");
    if (!(p.hi() < 1) || !(q.hi() < 1))
        throw DomainError("averaging-operator bounds need exponents below 1");
    for (std::size_t i = 0; i < n; ++i)
        if (p[i] > q[i] + 1e-12)
            throw DomainError("exponent ordering p <= q fails at some node");
    bool want_decreasing = variant != HardyVariant::T7;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        bool ok = want_decreasing ? f[i + 1] <= f[i] : f[i + 1] >= f[i];
        if (!ok)
            throw DomainError(want_decreasing ? "function must be nonincreasing"
                                              : "function must be nondecreasing");
    }

    GridFunction image = variant == HardyVariant::T8 ? dual_hardy_apply(f) : hardy_apply(f);
    double lhs = quasi_norm(image, q, w2, tol);
    double f_norm = quasi_norm(f, p, w1, tol);

    HardyReport hr;
    hr.constants = hardy_constants(p, q);
    hr.functional = rhs_weight_functional(variant, w1, w2, p, q, ev, tol);
    if (!hr.functional.admissible)
        throw NumericError("right-hand-side weight functional is infinite");
    hr.f_norm = f_norm;

    double constant = std::pow(p.lo(), 1.0 / p.lo()) * hr.constants.c_pq * hr.constants.d_p;
    double rhs = constant * hr.functional.value * f_norm;

    double quad = 0;
    if (lhs > 0) {
        auto integrand = modular_integrand(image, q, w2, lhs);
        quad = quadrature_error_estimate(integrand, f.grid());
        hr.lhs_tail_fraction = tail_decade_fraction(integrand, f.grid());
    }
    if (f_norm > 0)
        hr.f_tail_fraction = tail_decade_fraction(modular_integrand(f, p, w1, f_norm), f.grid());

    InequalityReport rep;
    rep.name = variant_name(variant);
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = constant;
    rep.slack = verdict_slack(lhs, rhs, quad);
    rep.ratio = safe_ratio(rhs, lhs);
    rep.verdict = lhs <= rhs + rep.slack ? Verdict::Holds : Verdict::Violated;
    if (rep.verdict == Verdict::Holds &&
        std::max(hr.lhs_tail_fraction, hr.f_tail_fraction) > 0.01)
        rep.verdict = Verdict::Indeterminate;
    char buf[160];
    std::snprintf(buf, sizeof(buf), "%s n=%zu p=[%.17g,%.17g] q=[%.17g,%.17g]", rep.name.c_str(),
                  n, p.lo(), p.hi(), q.lo(), q.hi());
    rep.inputs_digest = input_digest(buf);
    hr.report = std::move(rep);
    return hr;
}

bool example42_admissible(double alpha, double beta, double p) {
    if (!(p > 0) || !(p < 1)) throw DomainError("exponent must lie in (0, 1)");
    double inv_conj = (p - 1.0) / p; // 1/p', negative
    if (!(beta < -2.0) || beta == -4.0) return false;
    return alpha > beta + 2.0 + inv_conj && alpha < std::min(inv_conj, beta + 4.0 + inv_conj);
}

BridgeSides monotone_average_bridge(const GridFunction& f, double s, bool kernel_at_origin) {
    check_positive_axis(f);
    if (!(s > 0) || !(s < 1)) throw DomainError("bridge exponent must lie in (0, 1)");
    const Grid& g = f.grid();
    const auto& nodes = g.nodes();
    const auto& edges = g.edges();
    const auto& widths = g.weights();
    double a = g.domain().a;

    BridgeSides out;
    out.lhs.resize(f.size());
    out.rhs.resize(f.size());
    KahanSum cum;
    cum.add(f[0] * (edges.front() - a));
    std::vector<double> fs(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fs[i] = std::pow(f[i], s);

    if (kernel_at_origin) {
        // Kernel t^{s-1}: the weighted cumulative shares the left-to-right
        // sweep, with the sliver (a, first edge) integrated in closed form.
        KahanSum kcum;
        kcum.add(fs[0] * (std::pow(edges.front(), s) - std::pow(a, s)) / s);
        for (std::size_t i = 0; i < f.size(); ++i) {
            double x = nodes[i];
            out.lhs[i] = std::pow(cum.value() + f[i] * (x - edges[i]), s);
            double partial = fs[i] * (std::pow(x, s) - std::pow(edges[i], s)) / s;
            out.rhs[i] = s * (kcum.value() + partial);
            cum.add(f[i] * widths[i]);
            kcum.add(fs[i] * (std::pow(edges[i + 1], s) - std::pow(edges[i], s)) / s);
        }
    } else {
        // Kernel (x-t)^{s-1}, singular at the evaluation point: each x gets
        // its own sweep with the boundary cell integrated in closed form.
        for (std::size_t i = 0; i < f.size(); ++i) {
            double x = nodes[i];
            out.lhs[i] = std::pow(cum.value() + f[i] * (x - edges[i]), s);
            cum.add(f[i] * widths[i]);
            KahanSum k;
            k.add(fs[0] * (std::pow(x - a, s) - std::pow(x - edges.front(), s)) / s);
            for (std::size_t j = 0; j < i; ++j)
                k.add(fs[j] * (std::pow(x - edges[j], s) - std::pow(x - edges[j + 1], s)) / s);
            k.add(fs[i] * std::pow(x - edges[i], s) / s);
            out.rhs[i] = s * k.value();
        }
    }
    return out;
}

} // namespace vexle
