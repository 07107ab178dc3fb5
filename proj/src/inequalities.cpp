#include "vexle/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "vexle/summation.hpp"

namespace vexle {

namespace {

constexpr double kExponentSplitTol = 1e-10;

Verdict ge_verdict(double lhs, double rhs, double slack) {
    return lhs >= rhs - slack ? Verdict::Holds : Verdict::Violated;
}

Verdict le_verdict(double lhs, double rhs, double slack) {
    return lhs <= rhs + slack ? Verdict::Holds : Verdict::Violated;
}

std::string describe(const char* what, std::size_t n, double a, double b) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%s n=%zu lo=%.17g hi=%.17g", what, n, a, b);
    return std::string(buf);
}

// Relative quadrature estimate of the modular integrand of f at scale
// lambda; feeds the verdict slack.
double modular_quad_estimate(const GridFunction& f, const ExponentField& p, const WeightField& w,
                             double lambda) {
    std::vector<double> integrand(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double v = std::fabs(f[i]);
        integrand[i] = v == 0 ? 0.0 : std::pow(v * w[i] / std::max(lambda, 1e-300), p[i]);
    }
    return quadrature_error_estimate(integrand, f.grid());
}

} // namespace

InequalityReport check_reverse_minkowski(const GridFunction& f, const GridFunction& g,
                                         const ExponentField& p, const WeightField& w, double tol) {
    if (f.size() != g.size()) throw DomainError("f and g must share one grid");
    std::vector<double> sum(f.size());
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] = std::fabs(f[i]) + std::fabs(g[i]);
    GridFunction fg(f.grid_ptr(), std::move(sum));

    double lhs = quasi_norm(fg, p, w, tol);
    double nf = quasi_norm(f, p, w, tol);
    double ng = quasi_norm(g, p, w, tol);
    double rhs = nf + ng;

    double quad = modular_quad_estimate(fg, p, w, std::max(lhs, 1e-300));
    InequalityReport rep;
    rep.name = "reverse_minkowski";
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = 1.0;
    rep.slack = verdict_slack(lhs, rhs, quad);
    rep.ratio = safe_ratio(lhs, rhs);
    rep.verdict = ge_verdict(lhs, rhs, rep.slack);
    rep.inputs_digest = input_digest(describe("reverse_minkowski", f.size(), p.lo(), p.hi()));
    return rep;
}

InequalityReport check_reverse_holder(const GridFunction& f, const GridFunction& g,
                                      const ExponentField& p, const WeightField& w, double tol) {
    if (f.size() != g.size()) throw DomainError("f and g must share one grid");
    std::vector<double> prod(f.size());
    for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::fabs(f[i] * g[i]);
    GridFunction fg(f.grid_ptr(), prod);
    double lhs = integrate(fg);

    ConjugateExponent conj = ConjugateExponent::of(p);
    double constant = 1.0 / p.hi() + 1.0 / conj.sup;
    double nf = quasi_norm(f, p, w, tol);
    double ng = conjugate_norm(g, p, w, tol);
    double rhs = constant * nf * ng;

    double quad = quadrature_error_estimate(prod, f.grid());
    InequalityReport rep;
    rep.name = "reverse_holder";
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = constant;
    rep.slack = verdict_slack(lhs, rhs, quad);
    rep.ratio = safe_ratio(lhs, rhs);
    rep.verdict = ge_verdict(lhs, rhs, rep.slack);
    rep.inputs_digest = input_digest(describe("reverse_holder", f.size(), p.lo(), p.hi()));
    return rep;
}

double EmbeddingConstantParts::total() const {
    double base = sup_p_over_q + sup_gap_over_q + chi_equal_set;
    return std::pow(base, 1.0 / p_lo) * (weight_norm_r + weight_norm_inf);
}

EmbeddingConstantParts embedding_constant(const ExponentField& p, const ExponentField& q,
                                          const WeightField& w1, const WeightField& w2,
                                          double tol) {
    std::size_t n = p.values().size();
    if (q.values().size() != n || w1.values().size() != n || w2.values().size() != n)
        throw DomainError("embedding constant requires all fields on one grid");

    EmbeddingConstantParts parts;
    parts.p_lo = p.lo();

    std::vector<std::size_t> strict; // nodes with p < q
    for (std::size_t i = 0; i < n; ++i) {
        double gap = q[i] - p[i];
        if (gap < -kExponentSplitTol)
            throw DomainError("embedding requires p(x) <= q(x) at every node");
        if (gap > kExponentSplitTol) {
            strict.push_back(i);
        } else {
            parts.chi_equal_set = 1.0;
            parts.weight_norm_inf = std::max(parts.weight_norm_inf, w1[i] / w2[i]);
        }
    }

    if (!strict.empty()) {
        // Sub-grid of the p<q set carries the L_r part of the weight-ratio
        // norm with r = pq/(q-p).
        std::vector<double> nodes, weights, rvals, ratio;
        for (std::size_t i : strict) {
            parts.sup_p_over_q = std::max(parts.sup_p_over_q, p[i] / q[i]);
            parts.sup_gap_over_q = std::max(parts.sup_gap_over_q, (q[i] - p[i]) / q[i]);
            rvals.push_back(p[i] * q[i] / (q[i] - p[i]));
            ratio.push_back(w1[i] / w2[i]);
            nodes.push_back(p.grid().nodes()[i]);
            weights.push_back(p.grid().weights()[i]);
        }
        GridPtr subgrid = Grid::from_cells(p.grid().domain(), std::move(nodes), std::move(weights));
        GridFunction ratio_fn(subgrid, std::move(ratio));
        ExponentField r = ExponentField::from_values(subgrid, std::move(rvals),
                                                     ExponentRegime::GeneralPositive);
        parts.weight_norm_r = quasi_norm(ratio_fn, r, WeightField::ones(subgrid), tol);
    }
    return parts;
}

InequalityReport check_embedding(const GridFunction& f, const ExponentField& p,
                                 const ExponentField& q, const WeightField& w1,
                                 const WeightField& w2, double tol) {
    EmbeddingConstantParts parts = embedding_constant(p, q, w1, w2, tol);
    double c = parts.total();
    double lhs = quasi_norm(f, p, w1, tol);
    double nq = quasi_norm(f, q, w2, tol);
    double rhs = c * nq;

    double quad = std::max(modular_quad_estimate(f, p, w1, std::max(lhs, 1e-300)),
                           modular_quad_estimate(f, q, w2, std::max(nq, 1e-300)));
    InequalityReport rep;
    rep.name = "embedding";
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = c;
    rep.slack = verdict_slack(lhs, rhs, quad);
    rep.ratio = safe_ratio(rhs, lhs);
    rep.verdict = le_verdict(lhs, rhs, rep.slack);
    rep.inputs_digest = input_digest(describe("embedding", f.size(), p.lo(), q.hi()));
    return rep;
}

GridFunction2D::GridFunction2D(Grid2D grids, std::vector<double> values)
    : grids_(std::move(grids)), values_(std::move(values)) {
    if (!grids_.x || !grids_.y) throw DomainError("2-D grid function requires both axis grids");
    if (values_.size() != grids_.x->size() * grids_.y->size())
        throw DomainError("2-D grid function value count does not match the grids");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction2D GridFunction2D::sample(Grid2D grids, const Expr& e) {
    if (!grids.x || !grids.y) throw DomainError("2-D grid function requires both axis grids");
    std::vector<double> values(grids.x->size() * grids.y->size());
    for (std::size_t j = 0; j < grids.y->size(); ++j)
        for (std::size_t i = 0; i < grids.x->size(); ++i)
            values[j * grids.x->size() + i] =
                evaluate(e, grids.x->nodes()[i], grids.y->nodes()[j]);
    return GridFunction2D(std::move(grids), std::move(values));
}

GridFunction GridFunction2D::slice_y(std::size_t j) const {
    std::vector<double> vals(nx());
    for (std::size_t i = 0; i < nx(); ++i) vals[i] = at(i, j);
    return GridFunction(grids_.x, std::move(vals));
}

GridFunction GridFunction2D::slice_x(std::size_t i) const {
    std::vector<double> vals(ny());
    for (std::size_t j = 0; j < ny(); ++j) vals[j] = at(i, j);
    return GridFunction(grids_.y, std::move(vals));
}

double MixedNormConstantParts::total() const {
    double chi = chi_equal_pairs + chi_unequal_pairs;
    return (chi + p_hi / q_lo - p_lo / q_hi) * chi;
}

MixedNormConstantParts mixed_norm_constant(const ExponentField& p, const ExponentField& q) {
    MixedNormConstantParts parts;
    parts.p_lo = p.lo();
    parts.p_hi = p.hi();
    parts.q_lo = q.lo();
    parts.q_hi = q.hi();
    if (!(p.lo() >= 1.0)) throw DomainError("iterated-norm swap requires p(x) >= 1");
    if (!(p.hi() <= q.lo() + kExponentSplitTol))
        throw DomainError("iterated-norm swap requires p(x) <= q(y) for every node pair");

    // Pair sets over the product of the two node sets: equal pairs exist iff
    // some p value matches some q value within 1e-10.
    std::vector<double> qs = q.values();
    std::sort(qs.begin(), qs.end());
    for (double pv : p.values()) {
        auto it = std::lower_bound(qs.begin(), qs.end(), pv - kExponentSplitTol);
        if (it != qs.end() && *it <= pv + kExponentSplitTol) {
            parts.chi_equal_pairs = 1.0;
            break;
        }
    }
    bool all_equal = p.constant() && q.constant() && std::fabs(p.lo() - q.lo()) <= kExponentSplitTol;
    parts.chi_unequal_pairs = all_equal ? 0.0 : 1.0;
    return parts;
}

InequalityReport check_mixed_norm(const GridFunction2D& F, const ExponentField& p,
                                  const ExponentField& q, double tol) {
    if (p.values().size() != F.nx() || q.values().size() != F.ny())
        throw DomainError("exponents must live on the matching axes of F");
    MixedNormConstantParts parts = mixed_norm_constant(p, q);
    double c = parts.total();

    WeightField wx = WeightField::ones(F.grids().x);
    WeightField wy = WeightField::ones(F.grids().y);

    // lhs: x-norm per y node, then the q(.) norm in y.
    std::vector<double> inner_x(F.ny());
    for (std::size_t j = 0; j < F.ny(); ++j) inner_x[j] = quasi_norm(F.slice_y(j), p, wx, tol);
    double lhs = quasi_norm(GridFunction(F.grids().y, std::move(inner_x)), q, wy, tol);

    // rhs: y-norm per x node, then the p(.) norm in x.
    std::vector<double> inner_y(F.nx());
    for (std::size_t i = 0; i < F.nx(); ++i) inner_y[i] = quasi_norm(F.slice_x(i), q, wy, tol);
    double rhs_norm = quasi_norm(GridFunction(F.grids().x, std::move(inner_y)), p, wx, tol);
    double rhs = c * rhs_norm;

    InequalityReport rep;
    rep.name = "mixed_norm";
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = c;
    rep.slack = verdict_slack(lhs, rhs, 1e-5);
    rep.ratio = safe_ratio(rhs, lhs);
    rep.verdict = le_verdict(lhs, rhs, rep.slack);
    rep.inputs_digest = input_digest(describe("mixed_norm", F.nx() * F.ny(), p.hi(), q.lo()));
    return rep;
}

InequalityReport check_monotone_integral(const GridFunction& f, double s,
                                         MonotoneDirection direction) {
    if (!(s > 0) || !(s < 1)) throw DomainError("monotone-integral bound requires 0 < s < 1");
    const auto& nodes = f.grid().nodes();
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        bool ok = direction == MonotoneDirection::Decreasing ? f[i] >= f[i + 1] : f[i] <= f[i + 1];
        if (!ok)
            throw DomainError("function is not monotone in the declared direction at node " +
                              std::to_string(i + 1));
        if (f[i] < 0 || f[i + 1] < 0) throw DomainError("monotone-integral bound requires f >= 0");
    }

    double a = f.grid().domain().a;
    double b = f.grid().domain().b;
    if (direction == MonotoneDirection::Increasing && std::isinf(b))
        throw DomainError("nondecreasing kernel needs a bounded right endpoint");

    double lhs = std::pow(integrate(f), s);

    std::vector<double> integrand(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) {
        double dist = direction == MonotoneDirection::Decreasing ? nodes[i] - a : b - nodes[i];
        integrand[i] = std::pow(f[i], s) * std::pow(dist, s - 1.0);
    }
    KahanSum acc;
    for (std::size_t i = 0; i < f.size(); ++i) acc.add(integrand[i] * f.grid().weights()[i]);
    double rhs = s * acc.value();

    double quad = quadrature_error_estimate(integrand, f.grid());
    InequalityReport rep;
    rep.name = direction == MonotoneDirection::Decreasing ? "monotone_integral_decreasing"
                                                          : "monotone_integral_increasing";
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.constant = s;
    rep.slack = verdict_slack(lhs, rhs, quad);
    rep.ratio = safe_ratio(rhs, lhs);
    rep.verdict = le_verdict(lhs, rhs, rep.slack);
    rep.inputs_digest = input_digest(describe(rep.name.c_str(), f.size(), s, 0));
    return rep;
}

} // namespace vexle
