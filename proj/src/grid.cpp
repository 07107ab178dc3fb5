#include "vexle/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vexle/summation.hpp"

namespace vexle {

namespace {
constexpr double kDefaultXMinInfinite = 1e-6;
constexpr double kDefaultXMaxInfinite = 1e6;
// Relative start for geometric refinement toward a finite singular endpoint.
constexpr double kFiniteSliverRel = 1e-12;
} // namespace

bool Interval::unbounded() const { return std::isinf(b); }

void Interval::validate() const {
    if (!std::isfinite(a)) throw DomainError("interval lower endpoint must be finite");
    if (std::isnan(b)) throw DomainError("interval upper endpoint must not be NaN");
    if (!(a < b)) throw DomainError("interval must satisfy a < b");
}

std::shared_ptr<const Grid> Grid::build(const Interval& domain, GridScheme scheme, int n,
                                        std::optional<Truncation> truncation) {
    domain.validate();
    if (n < 2) throw DomainError("grid needs at least 2 cells");

    auto grid = std::make_shared<Grid>();
    grid->domain_ = domain;
    grid->scheme_ = scheme;

    double hi = domain.b;
    if (domain.unbounded()) {
        hi = truncation && truncation->x_max > 0 ? truncation->x_max : kDefaultXMaxInfinite;
        grid->right_truncated_ = true;
    } else if (truncation && truncation->x_max > 0 && truncation->x_max < domain.b) {
        hi = truncation->x_max;
        grid->right_truncated_ = true;
    }

    double lo = domain.a;
    if (scheme == GridScheme::Uniform) {
        if (truncation && truncation->x_min > domain.a) {
            lo = truncation->x_min;
            grid->left_truncated_ = true;
        }
        if (!(lo < hi)) throw DomainError("truncation window is empty (x_min >= x_max)");
        double h = (hi - lo) / n;
        grid->edges_.resize(n + 1);
        grid->nodes_.resize(n);
        grid->weights_.resize(n);
        for (int i = 0; i <= n; ++i) grid->edges_[i] = lo + h * i;
        grid->edges_[n] = hi;
        for (int i = 0; i < n; ++i) {
            grid->nodes_[i] = lo + h * (i + 0.5);
            grid->weights_[i] = grid->edges_[i + 1] - grid->edges_[i];
        }
        return grid;
    }

    if (scheme == GridScheme::Geometric) {
        if (domain.a < 0) throw DomainError("geometric scheme requires a non-negative left endpoint");
        if (domain.a == 0) {
            // A start at 0 is corrected to a positive x_min; defaults depend on
            // whether the interval is unbounded.
            double fallback = domain.unbounded() ? kDefaultXMinInfinite : kFiniteSliverRel * (hi - domain.a);
            lo = truncation && truncation->x_min > 0 ? truncation->x_min : fallback;
            grid->left_truncated_ = true;
        } else if (truncation && truncation->x_min > domain.a) {
            lo = truncation->x_min;
            grid->left_truncated_ = true;
        }
        if (!(lo < hi)) throw DomainError("truncation window is empty (x_min >= x_max)");
        double lr = std::log(lo), step = (std::log(hi) - lr) / n;
        grid->edges_.resize(n + 1);
        grid->nodes_.resize(n);
        grid->weights_.resize(n);
        for (int i = 0; i <= n; ++i) grid->edges_[i] = std::exp(lr + step * i);
        grid->edges_[0] = lo;
        grid->edges_[n] = hi;
        for (int i = 0; i < n; ++i) {
            grid->nodes_[i] = std::sqrt(grid->edges_[i] * grid->edges_[i + 1]);
            grid->weights_[i] = grid->edges_[i + 1] - grid->edges_[i];
        }
        return grid;
    }

    // GeometricTwoSided: log-refinement toward both endpoints of a finite span.
    if (domain.unbounded())
        throw DomainError("two-sided geometric scheme requires a bounded interval (or an x_max truncation)");
    int half = std::max(1, n / 2);
    double width = hi - domain.a;
    double mid = domain.a + width / 2;
    double sliver = kFiniteSliverRel * width;
    if (truncation && truncation->x_min > domain.a) sliver = truncation->x_min - domain.a;
    if (!(sliver > 0) || sliver >= width / 2)
        throw DomainError("truncation sliver must lie strictly inside the interval half-width");
    grid->left_truncated_ = true;

    // Offsets from each endpoint, log-spaced from the sliver to the midpoint.
    double lr = std::log(sliver), step = (std::log(width / 2) - lr) / half;
    std::vector<double> offs(half + 1);
    for (int i = 0; i <= half; ++i) offs[i] = std::exp(lr + step * i);
    offs[half] = width / 2;

    grid->edges_.reserve(2 * half + 1);
    for (int i = 0; i <= half; ++i) grid->edges_.push_back(domain.a + offs[i]);
    for (int i = half - 1; i >= 0; --i) grid->edges_.push_back(hi - offs[i]);
    grid->edges_.back() = hi - sliver;
    std::size_t cells = grid->edges_.size() - 1;
    grid->nodes_.resize(cells);
    grid->weights_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
        double e0 = grid->edges_[i], e1 = grid->edges_[i + 1];
        // Geometric midpoint in the offset coordinate of the nearer endpoint.
        if (e1 <= mid) {
            grid->nodes_[i] = domain.a + std::sqrt((e0 - domain.a) * (e1 - domain.a));
        } else if (e0 >= mid) {
            grid->nodes_[i] = hi - std::sqrt((hi - e0) * (hi - e1));
        } else {
            grid->nodes_[i] = 0.5 * (e0 + e1);
        }
        grid->weights_[i] = e1 - e0;
    }
    return grid;
}

std::shared_ptr<const Grid> Grid::from_cells(const Interval& domain, std::vector<double> nodes,
                                             std::vector<double> weights) {
    if (nodes.size() != weights.size()) throw DomainError("cell nodes and weights must match");
    auto grid = std::make_shared<Grid>();
    grid->domain_ = domain;
    grid->scheme_ = GridScheme::Uniform;
    grid->edges_.resize(nodes.size() + 1);
    grid->edges_[0] = nodes.empty() ? domain.a : nodes.front() - weights.front() / 2;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!(weights[i] > 0)) throw DomainError("cell weights must be positive");
        grid->edges_[i + 1] = grid->edges_[i] + weights[i];
    }
    grid->nodes_ = std::move(nodes);
    grid->weights_ = std::move(weights);
    return grid;
}

std::shared_ptr<const Grid> Grid::restrict_above(double cut) const {
    auto grid = std::make_shared<Grid>();
    grid->domain_ = Interval{cut, domain_.b, true, domain_.open_right};
    grid->scheme_ = scheme_;
    grid->right_truncated_ = right_truncated_;
    // First surviving cell: the one whose right edge lies beyond the cut. It
    // is kept as a partial cell (cut, edge) so the restriction covers
    // (cut, x_max) without a gap; cells whose original node survives keep it.
    std::size_t first = 0;
    while (first < nodes_.size() && edges_[first + 1] <= cut) ++first;
    grid->edges_.reserve(edges_.size() - first);
    for (std::size_t i = first; i < nodes_.size(); ++i) {
        double lo = std::max(cut, edges_[i]), hi = edges_[i + 1];
        grid->edges_.push_back(lo);
        grid->weights_.push_back(hi - lo);
        if (lo <= edges_[i])
            grid->nodes_.push_back(nodes_[i]);
        else
            grid->nodes_.push_back(lo > 0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi));
    }
    grid->edges_.push_back(first < nodes_.size() ? edges_.back() : cut);
    grid->left_truncated_ = grid->edges_.front() > grid->domain_.a;
    return grid;
}

std::shared_ptr<const Grid> Grid::restrict_below(double cut) const {
    auto grid = std::make_shared<Grid>();
    grid->domain_ = Interval{domain_.a, cut, domain_.open_left, true};
    grid->scheme_ = scheme_;
    grid->left_truncated_ = left_truncated_;
    std::size_t count = 0;
    while (count < nodes_.size() && edges_[count] < cut) ++count;
    grid->edges_.reserve(count + 1);
    grid->edges_.push_back(count > 0 ? edges_.front() : cut);
    for (std::size_t i = 0; i < count; ++i) {
        double lo = edges_[i], hi = std::min(cut, edges_[i + 1]);
        grid->edges_.push_back(hi);
        grid->weights_.push_back(hi - lo);
        if (hi >= edges_[i + 1])
            grid->nodes_.push_back(nodes_[i]);
        else
            grid->nodes_.push_back(lo > 0 ? std::sqrt(lo * hi) : 0.5 * (lo + hi));
    }
    grid->right_truncated_ = grid->edges_.back() < cut;
    return grid;
}

GridFunction::GridFunction(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
    if (!grid_) throw DomainError("grid function requires a grid");
    if (values_.size() != grid_->size())
        throw DomainError("grid function value count does not match the grid");
    for (double v : values_)
        if (!std::isfinite(v)) throw DomainError("grid function values must be finite");
}

GridFunction GridFunction::sample(GridPtr grid, const Expr& e, std::optional<double> t) {
    if (!grid) throw DomainError("grid function requires a grid");
    std::vector<double> values(grid->size());
    for (std::size_t i = 0; i < values.size(); ++i) values[i] = evaluate(e, grid->nodes()[i], t);
    return GridFunction(std::move(grid), std::move(values));
}

double integrate(const GridFunction& f) {
    KahanSum acc;
    const auto& w = f.grid().weights();
    for (std::size_t i = 0; i < f.size(); ++i) acc.add(f[i] * w[i]);
    return acc.value();
}

double quadrature_error_estimate(std::span<const double> values, const Grid& grid) {
    const auto& w = grid.weights();
    std::size_t n = values.size();
    if (n != grid.size() || n < 3) return 1e-3;
    KahanSum total, err;
    for (std::size_t i = 0; i < n; ++i) total.add(std::fabs(values[i]) * w[i]);
    // Midpoint-rule local error is ~ f'' w^3 / 24; estimate f'' w^2 by the
    // second difference of node values.
    for (std::size_t i = 1; i + 1 < n; ++i)
        err.add(std::fabs(values[i + 1] - 2 * values[i] + values[i - 1]) * w[i] / 24.0);
    // Truncation slivers: extrapolate the edge value over the dropped span.
    if (grid.left_truncated()) err.add(std::fabs(values.front()) * (grid.x_min() - grid.domain().a));
    if (grid.right_truncated()) err.add(std::fabs(values.back()) * grid.x_max() * 0.1);
    double scale = std::max(total.value(), 1e-30);
    return err.value() / scale;
}

double tail_decade_fraction(std::span<const double> values, const Grid& grid) {
    if (!grid.right_truncated() || values.size() != grid.size()) return 0.0;
    double cut = grid.x_max() / 10.0;
    KahanSum total, tail;
    const auto& nodes = grid.nodes();
    const auto& w = grid.weights();
    for (std::size_t i = 0; i < values.size(); ++i) {
        double mass = std::fabs(values[i]) * w[i];
        total.add(mass);
        if (nodes[i] > cut) tail.add(mass);
    }
    if (total.value() <= 0) return 0.0;
    return tail.value() / total.value();
}

std::string scheme_name(GridScheme scheme) {
    switch (scheme) {
        case GridScheme::Uniform: return "uniform";
        case GridScheme::Geometric: return "geometric";
        case GridScheme::GeometricTwoSided: return "geometric-two-sided";
    }
    return "?";
}

} // namespace vexle
