#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "vexle/grid.hpp"

namespace vexle {

enum class ExponentRegime {
    SubOne,         // 0 < p(x) < 1 (the quasi-normed regime)
    GeneralPositive // any 0 < p(x) < infinity (auxiliary norms)
};

/// Variable exponent sampled at the grid nodes. Essential bounds are the
/// node extremes; optionally declared bounds are validated against them to
/// within 1e-9.
class ExponentField {
public:
    static ExponentField sample(GridPtr grid, const Expr& e,
                                ExponentRegime regime = ExponentRegime::SubOne,
                                std::optional<std::pair<double, double>> declared = std::nullopt);
    static ExponentField from_values(GridPtr grid, std::vector<double> values,
                                     ExponentRegime regime = ExponentRegime::SubOne);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }
    double lo() const { return lo_; } // essential infimum (node minimum)
    double hi() const { return hi_; } // essential supremum (node maximum)
    ExponentRegime regime() const { return regime_; }
    bool constant() const { return hi_ - lo_ <= 1e-14; }

private:
    ExponentField() = default;
    GridPtr grid_;
    std::vector<double> values_;
    double lo_ = 0, hi_ = 0;
    ExponentRegime regime_ = ExponentRegime::SubOne;
};

/// Node minimum and maximum of the sampled exponent.
std::pair<double, double> ess_bounds(const ExponentField& p);

/// Strictly positive, finite weight sampled at the grid nodes.
class WeightField {
public:
    static WeightField sample(GridPtr grid, const Expr& e);
    static WeightField from_values(GridPtr grid, std::vector<double> values);
    static WeightField ones(GridPtr grid);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    WeightField() = default;
    GridPtr grid_;
    std::vector<double> values_;
};

/// Conjugate exponent p'(x) = p(x)/(p(x)-1). Negative throughout for the
/// sub-one regime; its node supremum (least negative value) is attained where
/// p attains its minimum.
struct ConjugateExponent {
    std::vector<double> values;
    double sup = 0; // node supremum of p'

    static ConjugateExponent of(const ExponentField& p);
};

/// L-infinity norm of an indicator over the node set: 1 if the predicate
/// holds at at least one node, else 0.
double indicator_sup_norm(const Grid& grid, const std::function<bool(double)>& predicate);

} // namespace vexle
