#include "vexle/pathology.hpp"

#include <algorithm>
#include <cmath>

#include "vexle/summation.hpp"

namespace vexle {

namespace {

void check_compatible(const GridFunction& f, const ExponentField& p, const WeightField& w) {
    if (f.size() != p.values().size() || f.size() != w.values().size())
        throw DomainError("function, exponent and weight must share one grid");
}

// Real-line support interval with fractional coverage of boundary cells.
struct SupportMask {
    double lo;
    double hi;
};

// Modular density of cell i: its full-cell contribution divided by the cell
// width, so partial coverage scales linearly.
double cell_term(const GridFunction& f, const ExponentField& p, const WeightField& w,
                 double multiplier, std::size_t i) {
    double v = std::fabs(f[i]) * multiplier;
    if (v == 0.0) return 0.0;
    double term = std::pow(v * w[i], p[i]) * f.grid().weights()[i];
    if (!std::isfinite(term)) throw NumericError("modular term overflow in support-mask probe");
    return term;
}

double masked_modular(const GridFunction& f, const ExponentField& p, const WeightField& w,
                      double multiplier, const SupportMask& mask) {
    const auto& edges = f.grid().edges();
    KahanSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double cell_lo = edges[i], cell_hi = edges[i + 1];
        double cover = std::min(mask.hi, cell_hi) - std::max(mask.lo, cell_lo);
        if (cover <= 0) continue;
        double frac = std::min(1.0, cover / (cell_hi - cell_lo));
        acc.add(cell_term(f, p, w, multiplier, i) * frac);
    }
    return acc.value();
}

// Point t inside the mask at which the cumulative masked modular reaches
// target (an absolute mass, not a fraction). The cumulative is piecewise
// linear in t, so the boundary cell is resolved by interpolation.
double masked_split_point(const GridFunction& f, const ExponentField& p, const WeightField& w,
                          double multiplier, const SupportMask& mask, double target) {
    const auto& edges = f.grid().edges();
    KahanSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) {
        double cell_lo = std::max(mask.lo, edges[i]);
        double cell_hi = std::min(mask.hi, edges[i + 1]);
        if (cell_hi <= cell_lo) continue;
        double width = edges[i + 1] - edges[i];
        double density = cell_term(f, p, w, multiplier, i) / width;
        double mass = density * (cell_hi - cell_lo);
        if (acc.value() + mass >= target) {
            if (mass <= 0) return cell_lo;
            double t = cell_lo + (target - acc.value()) / density;
            return std::clamp(t, cell_lo, cell_hi);
        }
        acc.add(mass);
    }
    return mask.hi;
}

} // namespace

ConvexityProbeResult nonconvexity_probe(const Interval& domain, int points, const Expr& p_expr,
                                        const Expr& w_expr, int m, double eps) {
    if (domain.unbounded()) throw DomainError("non-convexity probe needs a bounded domain");
    if (m < 1) throw DomainError("non-convexity probe needs at least one piece");
    if (!(eps > 0) || !std::isfinite(eps)) throw DomainError("piece modular must be positive and finite");
    if (points < 1) throw DomainError("point budget must be positive");

    int per_piece = std::max(1, points / m);
    GridPtr grid = Grid::build(domain, GridScheme::Uniform, static_cast<std::size_t>(per_piece) * m);
    ExponentField p = ExponentField::sample(grid, p_expr, ExponentRegime::SubOne);
    WeightField w = WeightField::sample(grid, w_expr);
    const auto& quad = grid->weights();

    // Piece k lives on its own block of cells and is scaled so that its
    // modular is eps exactly: f = (eps / W_k)^(1/p) with W_k = sum w^p over
    // the block. The average g_m then satisfies I(g_m) >= m^(1-p_hi) eps.
    std::vector<double> fvals(grid->size(), 0.0);
    ConvexityProbeResult out;
    out.m = m;
    out.epsilon = eps;
    out.p_hi = p.hi();
    out.piece_modulars.reserve(m);
    for (int k = 0; k < m; ++k) {
        std::size_t begin = static_cast<std::size_t>(k) * per_piece;
        std::size_t end = begin + per_piece;
        KahanSum wk;
        for (std::size_t i = begin; i < end; ++i) wk.add(std::pow(w[i], p[i]) * quad[i]);
        if (!(wk.value() > 0)) throw NumericError("weight mass of a probe block vanished");
        KahanSum piece;
        for (std::size_t i = begin; i < end; ++i) {
            fvals[i] = std::pow(eps / wk.value(), 1.0 / p[i]);
            piece.add(std::pow(fvals[i] * w[i], p[i]) * quad[i]);
        }
        out.piece_modulars.push_back(piece.value());
    }

    GridFunction average(grid, std::move(fvals));
    out.average_modular = modular_scaled(average, p, w, static_cast<double>(m));
    out.lower_bound = std::pow(static_cast<double>(m), 1.0 - out.p_hi) * eps;
    return out;
}

int nonconvexity_escape(const Interval& domain, int points, const Expr& p_expr, const Expr& w_expr,
                        double eps, double radius, int m_max) {
    if (!(radius > 0)) throw DomainError("escape radius must be positive");
    for (int m = 1; m <= m_max; ++m) {
        ConvexityProbeResult probe = nonconvexity_probe(domain, points, p_expr, w_expr, m, eps);
        if (probe.average_modular >= radius * (1.0 - 1e-9)) return m;
    }
    return 0;
}

double find_modular_split(const GridFunction& f, const ExponentField& p, const WeightField& w,
                          double target, double) {
    check_compatible(f, p, w);
    if (!(target > 0) || !(target < 1)) throw DomainError("split fraction must lie in (0, 1)");
    SupportMask all{f.grid().edges().front(), f.grid().edges().back()};
    double total = masked_modular(f, p, w, 1.0, all);
    if (!(total > 0) || !std::isfinite(total))
        throw NumericError("modular split needs a positive finite modular");
    return masked_split_point(f, p, w, 1.0, all, target * total);
}

DualProbeResult dual_triviality_sequence(const GridFunction& f0, const ExponentField& p,
                                         const WeightField& w, int steps, double tol) {
    check_compatible(f0, p, w);
    if (steps < 1) throw DomainError("dual probe needs at least one step");
    if (!(tol > 0)) throw DomainError("tolerance must be positive");

    DualProbeResult out;
    out.p_hi = p.hi();
    double contraction = std::pow(2.0, out.p_hi - 1.0);

    SupportMask mask{f0.grid().edges().front(), f0.grid().edges().back()};
    double multiplier = 1.0;
    double mod = masked_modular(f0, p, w, multiplier, mask);
    if (!(mod > 0) || !std::isfinite(mod))
        throw NumericError("dual probe needs a nonzero starting modular");
    out.modulars.push_back(mod);
    out.bounds.push_back(mod);

    for (int n = 0; n < steps; ++n) {
        double t = masked_split_point(f0, p, w, multiplier, mask, 0.5 * mod);
        SupportMask left{mask.lo, t}, right{t, mask.hi};
        double left_mod = masked_modular(f0, p, w, multiplier, left);
        double right_mod = masked_modular(f0, p, w, multiplier, right);
        mask = left_mod <= right_mod ? left : right;
        if (!(mask.hi > mask.lo)) throw NumericError("dual probe support collapsed to a point");

        // Double f on the kept half: (2v)^p <= 2^{p_hi} v^p, and the kept
        // half carries at most half the modular.
        multiplier *= 2.0;
        double next = masked_modular(f0, p, w, multiplier, mask);
        out.split_points.push_back(t);
        out.modulars.push_back(next);
        out.bounds.push_back(out.bounds.back() * contraction);
        double step_ratio = next / (contraction * mod);
        out.max_step_ratio = std::max(out.max_step_ratio, step_ratio);
        mod = next;
        if (mod == 0.0) throw NumericError("dual probe modular underflowed to zero");
    }
    out.contraction_ok = out.max_step_ratio <= 1.0 + 1e-6;
    return out;
}

} // namespace vexle
