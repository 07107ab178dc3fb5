#pragma once

#include "vexle/fields.hpp"
#include "vexle/grid.hpp"

namespace vexle {

/// Modular I(f) = integral of (|f(x)| w(x))^p(x). Terms with f(x) = 0
/// contribute 0 regardless of p. Returns +infinity if any term overflows.
double modular(const GridFunction& f, const ExponentField& p, const WeightField& w);

/// I(f/lambda) for lambda > 0.
double modular_scaled(const GridFunction& f, const ExponentField& p, const WeightField& w,
                      double lambda);

/// Luxemburg-type quasi-norm: inf{lambda > 0 : I(f/lambda) <= 1}. The initial
/// bracket comes from the power bounds I(f)^{1/p_lo}, I(f)^{1/p_hi} (valid on
/// either side of modular 1), then bisection to relative tolerance tol, with
/// geometric midpoints while the bracket spans orders of magnitude. Returns 0
/// for the zero function. The result
/// satisfies |I(f/lambda) - 1| <= 10*tol for sub-one and moderate exponent
/// fields (the residual check is scaled/skipped for very large exponents,
/// where the modular's sensitivity exceeds double resolution).
double quasi_norm(const GridFunction& f, const ExponentField& p, const WeightField& w,
                  double tol = 1e-8);

/// Conjugate-space modular integral of (|g(x)| / (w(x) mu))^{p'(x)} with
/// p' = p/(p-1) < 0; increasing in mu.
double conjugate_modular(const GridFunction& g, const ExponentField& p, const WeightField& w,
                         double mu);

/// Conjugate norm sup{mu > 0 : conjugate_modular(g, mu) <= 1} under the
/// reciprocal weight. Requires g nonzero at every node.
double conjugate_norm(const GridFunction& g, const ExponentField& p, const WeightField& w,
                      double tol = 1e-8);

} // namespace vexle
