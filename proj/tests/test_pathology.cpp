#include "doctest.h"

#include <cmath>

#include "vexle/pathology.hpp"

using namespace vexle;

TEST_CASE("non-convexity probe with one piece reproduces epsilon") {
    auto p = parse_expression("0.5");
    auto w = parse_expression("1");
    auto r = nonconvexity_probe(Interval{0.0, 1.0}, 256, *p, *w, 1, 0.01);
    REQUIRE(r.piece_modulars.size() == 1);
    CHECK(r.piece_modulars[0] == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(r.average_modular == doctest::Approx(0.01).epsilon(1e-9));
    CHECK(r.lower_bound == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("averaging m bumps multiplies the modular by sqrt(m) when p = 1/2") {
    // I(g_m) = m^(1-p) eps = sqrt(m) * 0.01 exactly for constant p = 1/2.
    auto p = parse_expression("0.5");
    auto w = parse_expression("1");
    for (int m : {1, 10, 100}) {
        auto r = nonconvexity_probe(Interval{0.0, 1.0}, 4 * m, *p, *w, m, 0.01);
        CHECK(r.average_modular == doctest::Approx(0.01 * std::sqrt(double(m))).epsilon(1e-9));
        for (double pm : r.piece_modulars)
            CHECK(pm == doctest::Approx(0.01).epsilon(1e-9));
    }
}

TEST_CASE("variable exponent still satisfies the averaged lower bound") {
    auto p = parse_expression("0.3 + 0.3*x");
    auto w = parse_expression("1 + x");
    auto r = nonconvexity_probe(Interval{0.0, 1.0}, 4000, *p, *w, 50, 0.02);
    CHECK(r.p_hi == doctest::Approx(0.6).epsilon(1e-4)); // p sampled at nodes, not edges
    CHECK(r.average_modular >= r.lower_bound * (1.0 - 1e-9));
    for (double pm : r.piece_modulars)
        CHECK(pm == doctest::Approx(0.02).epsilon(1e-9));
}

TEST_CASE("escape count for a fixed modular ball") {
    // radius 0.1 with eps = 0.01, p = 1/2: sqrt(m) * 0.01 >= 0.1 first at m = 100.
    auto p = parse_expression("0.5");
    auto w = parse_expression("1");
    CHECK(nonconvexity_escape(Interval{0.0, 1.0}, 1024, *p, *w, 0.01, 0.1, 256) == 100);
    CHECK(nonconvexity_escape(Interval{0.0, 1.0}, 1024, *p, *w, 0.01, 10.0, 64) == 0);
}

TEST_CASE("modular split point for the unit constant") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 128);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::ones(g);
    auto f = GridFunction::sample(g, *parse_expression("1"));
    CHECK(find_modular_split(f, p, w, 0.5) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(find_modular_split(f, p, w, 0.25) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK_THROWS_AS(find_modular_split(f, p, w, 0.0), DomainError);
}

TEST_CASE("halving/doubling sequence contracts the modular exactly") {
    // p = 1/2: each step multiplies the modular by 2^(p-1) = 1/sqrt(2).
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 1024);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::ones(g);
    auto f0 = GridFunction::sample(g, *parse_expression("1"));
    auto r = dual_triviality_sequence(f0, p, w, 10);
    REQUIRE(r.modulars.size() == 11);
    REQUIRE(r.split_points.size() == 10);
    for (int n = 0; n <= 10; ++n)
        CHECK(r.modulars[n] == doctest::Approx(std::pow(2.0, -0.5 * n)).epsilon(1e-9));
    // splits walk to the left: 1/2, 1/4, 1/8, ...
    CHECK(r.split_points[0] == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(r.split_points[1] == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(r.split_points[2] == doctest::Approx(0.125).epsilon(1e-9));
    CHECK(r.contraction_ok);
    CHECK(r.max_step_ratio == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("fractional boundary cells keep the contraction exact on coarse grids") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 64);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::ones(g);
    auto f0 = GridFunction::sample(g, *parse_expression("1"));
    auto r = dual_triviality_sequence(f0, p, w, 15);
    for (int n = 0; n <= 15; ++n)
        CHECK(r.modulars[n] == doctest::Approx(std::pow(2.0, -0.5 * n)).epsilon(1e-9));
    CHECK(r.contraction_ok);
}

TEST_CASE("contraction factor tracks the exponent supremum") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 512);
    auto p = ExponentField::sample(g, *parse_expression("0.4 + 0.3*x"));
    auto w = WeightField::sample(g, *parse_expression("1 + 0.5*x"));
    auto f0 = GridFunction::sample(g, *parse_expression("1 + x"));
    auto r = dual_triviality_sequence(f0, p, w, 12);
    CHECK(r.p_hi == doctest::Approx(0.7).epsilon(1e-3)); // node maximum of 0.4 + 0.3x
    CHECK(r.contraction_ok);
    CHECK(r.max_step_ratio <= 1.0 + 1e-6);
    for (std::size_t n = 0; n + 1 < r.modulars.size(); ++n)
        CHECK(r.modulars[n + 1] <= std::pow(2.0, r.p_hi - 1.0) * r.modulars[n] * (1.0 + 1e-6));
}
