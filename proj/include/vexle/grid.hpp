#pragma once

#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "vexle/expr.hpp"

namespace vexle {

/// Raised on invalid domain/grid/field construction or violated operation
/// preconditions.
class DomainError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when an iterative routine fails its convergence or residual check.
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One-dimensional interval (a, b); b may be +infinity. Openness flags are
/// descriptive (all quadrature nodes are interior anyway).
struct Interval {
    double a = 0.0;
    double b = 1.0;
    bool open_left = true;
    bool open_right = true;

    bool unbounded() const;
    void validate() const; // a finite, a < b
};

enum class GridScheme { Uniform, Geometric, GeometricTwoSided };

/// Truncation window applied when an interval endpoint is 0 or infinity.
struct Truncation {
    double x_min = 0.0;
    double x_max = 0.0;
};

/// Midpoint-rule quadrature grid: n cells with edges, one node per cell, and
/// node weights equal to cell widths.
///   - Uniform: equal cells, arithmetic midpoints.
///   - Geometric: log-uniform cells from x_min up, geometric midpoints (for
///     power-law singularities at the left/zero endpoint and infinite tails).
///   - GeometricTwoSided: log-refined toward both endpoints of a finite
///     interval (for kernels singular at either end).
class Grid {
public:
    static std::shared_ptr<const Grid> build(const Interval& domain, GridScheme scheme, int n,
                                             std::optional<Truncation> truncation = std::nullopt);

    /// Grid over an explicit (possibly non-contiguous) cell selection; edges
    /// are synthesized from the weights. Used for restrictions to node sets.
    static std::shared_ptr<const Grid> from_cells(const Interval& domain, std::vector<double> nodes,
                                                  std::vector<double> weights);

    const Interval& domain() const { return domain_; }
    GridScheme scheme() const { return scheme_; }
    std::size_t size() const { return nodes_.size(); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    const std::vector<double>& edges() const { return edges_; }
    double x_min() const { return edges_.front(); }
    double x_max() const { return edges_.back(); }
    /// True when the grid drops a sliver (a, x_min) of the domain.
    bool left_truncated() const { return left_truncated_; }
    /// True when the domain is unbounded above and cut at x_max.
    bool right_truncated() const { return right_truncated_; }

    /// Sub-grid covering (cut, x_max) resp. (x_min, cut): whole cells beyond
    /// the cut plus a partial boundary cell, whose node moves to the partial
    /// cell's own midpoint. Cells keep their position, so index i of the
    /// restriction corresponds to original cell (size()-result->size())+i
    /// for restrict_above and to original cell i for restrict_below. May be
    /// empty.
    std::shared_ptr<const Grid> restrict_above(double cut) const;
    std::shared_ptr<const Grid> restrict_below(double cut) const;

private:
    Interval domain_;
    GridScheme scheme_ = GridScheme::Uniform;
    std::vector<double> edges_, nodes_, weights_;
    bool left_truncated_ = false, right_truncated_ = false;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Node values of a function on a grid. Values must be finite.
class GridFunction {
public:
    GridFunction(GridPtr grid, std::vector<double> values);
    static GridFunction sample(GridPtr grid, const Expr& e,
                               std::optional<double> t = std::nullopt);

    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    std::size_t size() const { return values_.size(); }
    const std::vector<double>& values() const { return values_; }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    GridPtr grid_;
    std::vector<double> values_;
};

/// Midpoint-rule integral (compensated sum of value*weight).
double integrate(const GridFunction& f);

/// Relative quadrature-error estimate for integrating the given node values:
/// a second-difference midpoint term plus truncation-sliver extrapolation.
/// Used to size verdict slacks; capped by callers, never a certification.
double quadrature_error_estimate(std::span<const double> values, const Grid& grid);

/// Fraction of |integrand|*weight mass carried by the outermost decade
/// (x_max/10, x_max] of a grid truncated at +infinity; 0 for bounded domains.
double tail_decade_fraction(std::span<const double> values, const Grid& grid);

std::string scheme_name(GridScheme scheme);

} // namespace vexle
