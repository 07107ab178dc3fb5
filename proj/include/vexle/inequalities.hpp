#pragma once

#include "vexle/report.hpp"
#include "vexle/space.hpp"

namespace vexle {

/// Reverse Minkowski in the sub-one regime:
///   || |f| + |g| ||  >=  ||f|| + ||g||.
InequalityReport check_reverse_minkowski(const GridFunction& f, const GridFunction& g,
                                         const ExponentField& p, const WeightField& w,
                                         double tol = 1e-8);

/// Reverse Hoelder in the sub-one regime:
///   integral |f g|  >=  (1/p_hi + 1/p'_sup) ||f||_{p,w} ||g||_{p',1/w}.
/// Requires g nonzero at every node.
InequalityReport check_reverse_holder(const GridFunction& f, const GridFunction& g,
                                      const ExponentField& p, const WeightField& w,
                                      double tol = 1e-8);

/// Pieces of the embedding constant between two exponent/weight pairs with
/// p(x) <= q(x) < 1. On the set where p < q (split at 1e-10) the weight-ratio
/// norm uses the exponent r = pq/(q-p); where p = q it uses the node max.
struct EmbeddingConstantParts {
    double sup_p_over_q = 0;      // A: sup over the p<q set of p/q (0 when empty)
    double sup_gap_over_q = 0;    // B: sup over the p<q set of (q-p)/q
    double chi_equal_set = 0;     // 1 when the p=q set is non-empty
    double weight_norm_r = 0;     // ||w1/w2|| with exponent r over the p<q set
    double weight_norm_inf = 0;   // max of w1/w2 over the p=q set
    double p_lo = 0;
    double total() const;
};

EmbeddingConstantParts embedding_constant(const ExponentField& p, const ExponentField& q,
                                          const WeightField& w1, const WeightField& w2,
                                          double tol = 1e-8);

/// Embedding  ||f||_{p,w1} <= C ||f||_{q,w2}  with C from embedding_constant.
InequalityReport check_embedding(const GridFunction& f, const ExponentField& p,
                                 const ExponentField& q, const WeightField& w1,
                                 const WeightField& w2, double tol = 1e-8);

/// Product grid and node values for two-variable functions F(x, y).
struct Grid2D {
    GridPtr x;
    GridPtr y;
};

class GridFunction2D {
public:
    GridFunction2D(Grid2D grids, std::vector<double> values); // row-major: [j*nx + i]
    static GridFunction2D sample(Grid2D grids, const Expr& e); // y bound to t

    const Grid2D& grids() const { return grids_; }
    std::size_t nx() const { return grids_.x->size(); }
    std::size_t ny() const { return grids_.y->size(); }
    double at(std::size_t i, std::size_t j) const { return values_[j * nx() + i]; }
    GridFunction slice_y(std::size_t j) const; // F(., y_j) on the x grid
    GridFunction slice_x(std::size_t i) const; // F(x_i, .) on the y grid

private:
    Grid2D grids_;
    std::vector<double> values_;
};

/// Constant for swapping iterated norms, exponents at least 1 with
/// p(x) <= q(y) for every pair of nodes:
///   C = (chi_eq + chi_neq + p_hi/q_lo - p_lo/q_hi) (chi_eq + chi_neq)
/// where chi_eq / chi_neq indicate pairs with p(x) = q(y) (within 1e-10) and
/// pairs without.
struct MixedNormConstantParts {
    double chi_equal_pairs = 0;
    double chi_unequal_pairs = 0;
    double p_lo = 0, p_hi = 0, q_lo = 0, q_hi = 0;
    double total() const;
};

MixedNormConstantParts mixed_norm_constant(const ExponentField& p, const ExponentField& q);

/// Iterated-norm swap  || ||F||_{p(.),x} ||_{q(.),y} <= C || ||F||_{q(.),y} ||_{p(.),x}
/// (unweighted, exponents >= 1).
InequalityReport check_mixed_norm(const GridFunction2D& F, const ExponentField& p,
                                  const ExponentField& q, double tol = 1e-8);

enum class MonotoneDirection { Decreasing, Increasing };

/// Monotone-integral bound for 0 < s < 1:
///   (integral f)^s <= s * integral f(x)^s k(x) dx
/// with kernel k(x) = (x-a)^{s-1} for nonincreasing f and (b-x)^{s-1} for
/// nondecreasing f. Both sides are computed on f's own grid, so the caller
/// should refine toward the kernel's singular endpoint.
InequalityReport check_monotone_integral(const GridFunction& f, double s,
                                         MonotoneDirection direction);

} // namespace vexle
