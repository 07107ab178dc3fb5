#include "doctest.h"

#include <cmath>
#include <limits>
#include <numeric>

#include "vexle/grid.hpp"

using namespace vexle;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("uniform grid geometry") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 4);
    REQUIRE(g->size() == 4);
    CHECK(g->nodes()[0] == doctest::Approx(0.125));
    CHECK(g->nodes()[3] == doctest::Approx(0.875));
    CHECK(g->edges().front() == 0.0);
    CHECK(g->edges().back() == 1.0);
    for (double w : g->weights()) CHECK(w == doctest::Approx(0.25));
    CHECK(!g->left_truncated());
    CHECK(!g->right_truncated());
}

TEST_CASE("geometric grid covers all but a vanishing sliver") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Geometric, 512);
    double total = std::accumulate(g->weights().begin(), g->weights().end(), 0.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(g->left_truncated());
    // nodes are geometric midpoints: node^2 = e_i * e_{i+1}
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(g->nodes()[i] * g->nodes()[i] ==
              doctest::Approx(g->edges()[i] * g->edges()[i + 1]).epsilon(1e-12));
}

TEST_CASE("integrable singularity x^(-1/2) on a geometric grid") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Geometric, 4096);
    auto f = GridFunction::sample(g, *parse_expression("x^(-0.5)"));
    CHECK(integrate(f) == doctest::Approx(2.0).epsilon(1e-3));
}

TEST_CASE("unbounded domain uses the default truncation window") {
    auto g = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 64);
    CHECK(g->x_min() == doctest::Approx(1e-6));
    CHECK(g->x_max() == doctest::Approx(1e6));
    CHECK(g->left_truncated());
    CHECK(g->right_truncated());

    auto h = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 64, Truncation{1e-3, 1e3});
    CHECK(h->x_min() == doctest::Approx(1e-3));
    CHECK(h->x_max() == doctest::Approx(1e3));
}

TEST_CASE("restriction keeps partial boundary cells") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 4);

    auto above = g->restrict_above(0.3);
    REQUIRE(above->size() == 3);
    CHECK(above->edges().front() == doctest::Approx(0.3));
    CHECK(above->weights()[0] == doctest::Approx(0.2));
    CHECK(above->nodes()[0] == doctest::Approx(std::sqrt(0.3 * 0.5)));
    CHECK(above->weights()[1] == doctest::Approx(0.25));
    CHECK(above->nodes()[1] == g->nodes()[2]); // original cell (4-3)+1
    CHECK(above->edges().back() == doctest::Approx(1.0));

    auto below = g->restrict_below(0.3);
    REQUIRE(below->size() == 2);
    CHECK(below->nodes()[0] == g->nodes()[0]);
    CHECK(below->weights()[0] == doctest::Approx(0.25));
    CHECK(below->weights()[1] == doctest::Approx(0.05));
    CHECK(below->nodes()[1] == doctest::Approx(std::sqrt(0.25 * 0.3)));
    CHECK(below->edges().back() == doctest::Approx(0.3));

    // cut on an existing edge keeps whole cells only
    auto clean = g->restrict_above(0.5);
    REQUIRE(clean->size() == 2);
    CHECK(clean->nodes()[0] == g->nodes()[2]);
    CHECK(clean->weights()[0] == doctest::Approx(0.25));

    CHECK(g->restrict_above(1.5)->size() == 0);
    CHECK(g->restrict_below(0.0)->size() == 0);
}

TEST_CASE("restriction conserves mass") {
    auto g = Grid::build(Interval{0.0, 2.0}, GridScheme::Uniform, 7);
    double cut = 0.73;
    auto above = g->restrict_above(cut);
    auto below = g->restrict_below(cut);
    double wa = std::accumulate(above->weights().begin(), above->weights().end(), 0.0);
    double wb = std::accumulate(below->weights().begin(), below->weights().end(), 0.0);
    CHECK(wa + wb == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(wa == doctest::Approx(2.0 - cut).epsilon(1e-12));
}

TEST_CASE("tail decade fraction on a truncated tail") {
    auto g = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 240);
    std::vector<double> ones(g->size(), 1.0);
    // mass of (1e5, 1e6] over (1e-6, 1e6] with unit integrand is about 0.9
    CHECK(tail_decade_fraction(ones, *g) == doctest::Approx(0.9).epsilon(1e-2));

    auto b = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 16);
    std::vector<double> onesb(b->size(), 1.0);
    CHECK(tail_decade_fraction(onesb, *b) == 0.0);
}

TEST_CASE("grid function sampling propagates evaluation errors") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 8);
    CHECK_THROWS_AS(GridFunction::sample(g, *parse_expression("log(x - x)")), EvalError);
    auto f = GridFunction::sample(g, *parse_expression("x + t"), 2.0);
    CHECK(f[0] == doctest::Approx(g->nodes()[0] + 2.0));
}

TEST_CASE("quadrature error estimate is small for smooth integrands") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 256);
    auto f = GridFunction::sample(g, *parse_expression("1 + x"));
    double err = quadrature_error_estimate(f.values(), *g);
    CHECK(err >= 0.0);
    CHECK(err < 1e-3);
}
