#include "vexle/fields.hpp"

#include <algorithm>
#include <cmath>

namespace vexle {

namespace {

void check_regime(double lo, double hi, ExponentRegime regime) {
    if (!(lo > 0)) throw DomainError("exponent must be strictly positive at every node");
    if (regime == ExponentRegime::SubOne && !(hi < 1.0))
        throw DomainError("sub-one exponent regime requires p(x) < 1 at every node");
    (void)hi;
}

} // namespace

ExponentField ExponentField::sample(GridPtr grid, const Expr& e, ExponentRegime regime,
                                    std::optional<std::pair<double, double>> declared) {
    if (!grid) throw DomainError("exponent field requires a grid");
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        values[i] = evaluate(e, grid->nodes()[i]);
        if (!std::isfinite(values[i])) throw DomainError("exponent must be finite at every node");
    }
    ExponentField field = from_values(std::move(grid), std::move(values), regime);
    if (declared) {
        if (std::fabs(declared->first - field.lo_) > 1e-9 || std::fabs(declared->second - field.hi_) > 1e-9)
            throw DomainError("declared exponent bounds do not match the node extremes within 1e-9");
    }
    return field;
}

ExponentField ExponentField::from_values(GridPtr grid, std::vector<double> values,
                                         ExponentRegime regime) {
    if (!grid) throw DomainError("exponent field requires a grid");
    if (values.size() != grid->size()) throw DomainError("exponent value count does not match the grid");
    if (values.empty()) throw DomainError("exponent field requires a non-empty grid");
    ExponentField field;
    auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    field.lo_ = *mn;
    field.hi_ = *mx;
    for (double v : values)
        if (!std::isfinite(v)) throw DomainError("exponent must be finite at every node");
    check_regime(field.lo_, field.hi_, regime);
    field.grid_ = std::move(grid);
    field.values_ = std::move(values);
    field.regime_ = regime;
    return field;
}

std::pair<double, double> ess_bounds(const ExponentField& p) { return {p.lo(), p.hi()}; }

WeightField WeightField::sample(GridPtr grid, const Expr& e) {
    if (!grid) throw DomainError("weight field requires a grid");
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = evaluate(e, grid->nodes()[i]);
    return from_values(std::move(grid), std::move(values));
}

WeightField WeightField::from_values(GridPtr grid, std::vector<double> values) {
    if (!grid) throw DomainError("weight field requires a grid");
    if (values.size() != grid->size()) throw DomainError("weight value count does not match the grid");
    for (double v : values)
        if (!(v > 0) || !std::isfinite(v))
            throw DomainError("weight must be strictly positive and finite at every node");
    WeightField field;
    field.grid_ = std::move(grid);
    field.values_ = std::move(values);
    return field;
}

WeightField WeightField::ones(GridPtr grid) {
    if (!grid) throw DomainError("weight field requires a grid");
    std::vector<double> values(grid->size(), 1.0);
    return from_values(std::move(grid), std::move(values));
}

ConjugateExponent ConjugateExponent::of(const ExponentField& p) {
    ConjugateExponent conj;
    conj.values.resize(p.values().size());
    for (std::size_t i = 0; i < conj.values.size(); ++i) {
        double pi = p[i];
        if (std::fabs(pi - 1.0) < 1e-14) throw DomainError("conjugate exponent undefined where p(x) = 1");
        double ci = pi / (pi - 1.0);
        // Harmonic identity must hold to near machine precision.
        if (std::fabs(1.0 / pi + 1.0 / ci - 1.0) > 1e-12)
            throw NumericError("conjugate exponent failed the 1/p + 1/p' = 1 identity");
        conj.values[i] = ci;
    }
    conj.sup = *std::max_element(conj.values.begin(), conj.values.end());
    return conj;
}

double indicator_sup_norm(const Grid& grid, const std::function<bool(double)>& predicate) {
    for (double x : grid.nodes())
        if (predicate(x)) return 1.0;
    return 0.0;
}

} // namespace vexle
