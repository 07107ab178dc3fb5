#include "doctest.h"

#include <cmath>
#include <limits>

#include "vexle/hardy.hpp"

using namespace vexle;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_CASE("averaging a constant reproduces it exactly") {
    for (auto scheme : {GridScheme::Uniform, GridScheme::Geometric}) {
        auto domain = scheme == GridScheme::Uniform ? Interval{0.0, 2.0} : Interval{0.0, kInf};
        auto g = Grid::build(domain, scheme, scheme == GridScheme::Uniform ? 64 : 128);
        auto f = GridFunction::sample(g, *parse_expression("1"));
        auto af = hardy_apply(f);
        for (std::size_t i = 0; i < af.size(); ++i)
            CHECK(af[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("averaging a ramp gives half the ramp") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 4096);
    auto f = GridFunction::sample(g, *parse_expression("x"));
    auto af = hardy_apply(f);
    // at the first node the cumulative covers only (0, x_0] where the step
    // value is f[0], so the average equals f[0] exactly
    CHECK(af[0] == doctest::Approx(g->nodes()[0]).epsilon(1e-15));
    for (std::size_t i = 0; i < af.size(); ++i) {
        if (g->nodes()[i] < 0.1) continue; // partial-cell error ~ (h/x)^2
        CHECK(af[i] == doctest::Approx(0.5 * g->nodes()[i]).epsilon(1e-5));
    }
}

TEST_CASE("dual averaging of an indicator has a closed form") {
    // (1/x) integral_x^1 1 dt = (1 - x)/x on (0,1)
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 128);
    auto f = GridFunction::sample(g, *parse_expression("1"));
    auto df = dual_hardy_apply(f);
    for (std::size_t i = 0; i < df.size(); ++i) {
        double x = g->nodes()[i];
        CHECK(df[i] == doctest::Approx((1.0 - x) / x).epsilon(1e-12));
    }
}

TEST_CASE("norm-inequality constants on a two-value profile") {
    auto g = Grid::build(Interval{0.0, 2.0}, GridScheme::Uniform, 2);
    auto p = ExponentField::from_values(g, {0.3, 0.3});
    auto q = ExponentField::from_values(g, {0.25, 0.5});
    auto c = hardy_constants(p, q);
    CHECK(c.chi_delta1 == 0.0);
    CHECK(c.chi_delta2 == 1.0);
    CHECK(c.chi_s1 == 1.0);
    CHECK(c.chi_s2 == 0.0);
    CHECK(c.q_spread_term == doctest::Approx(0.3 * (4.0 - 2.0)).epsilon(1e-12));
    CHECK(c.c_pq == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(c.d_p == doctest::Approx(std::pow(2.0, 1.0 / 0.3)).epsilon(1e-9));

    auto pc = ExponentField::from_values(g, {0.5, 0.5});
    auto cc = hardy_constants(pc, pc);
    CHECK(cc.c_pq == doctest::Approx(1.0).epsilon(1e-12)); // (1 + 0 + 0) * (1 + 0)
    CHECK(cc.d_p == doctest::Approx(4.0).epsilon(1e-12));  // (1 + 0 + 1)^2
}

TEST_CASE("weight functional against a closed form") {
    // p = q = 1/2, w1 = w2 = x^-2 on (0, inf): F(t) = 4 (1 - 1e-3 sqrt(t))^2
    // on the default truncation window, so the functional value is 4 - O(1e-5).
    auto g = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 1024);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::sample(g, *parse_expression("x^(-2)"));
    auto fun = rhs_weight_functional(HardyVariant::T6, w, w, p, p);
    CHECK(fun.admissible);
    CHECK(fun.lr_part == 0.0); // constant p: pure sup part
    CHECK(fun.value == doctest::Approx(4.0).epsilon(5e-3));
    REQUIRE(fun.ratios.size() == g->size());
    // spot-check the closed form away from the window edges
    for (std::size_t i = 0; i < g->size(); i += 97) {
        double t = fun.ts[i];
        if (t < 1e-3 || t > 1e3) continue;
        double expect = 4.0 * std::pow(1.0 - 1e-3 * std::sqrt(t), 2.0);
        CHECK(fun.ratios[i] == doctest::Approx(expect).epsilon(1e-2));
    }
}

TEST_CASE("self-calibrated weight flattens the functional to one") {
    // Feeding the first-pass ratios back in as w1 makes every ratio equal 1:
    // the construction behind sharpness of the weight condition.
    auto g = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 256);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w2 = WeightField::sample(g, *parse_expression("x^(-2)"));
    auto ones = WeightField::ones(g);
    auto first = rhs_weight_functional(HardyVariant::T6, ones, w2, p, p);
    REQUIRE(first.admissible);
    auto w1 = WeightField::from_values(g, first.ratios);
    auto second = rhs_weight_functional(HardyVariant::T6, w1, w2, p, p);
    REQUIRE(second.admissible);
    for (double r : second.ratios) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(second.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("averaging-operator norm inequality on power weights") {
    auto g = Grid::build(Interval{0.0, kInf}, GridScheme::Geometric, 512);
    auto p = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::sample(g, *parse_expression("x^(-2)"));
    auto f = GridFunction::sample(g, *parse_expression("if(x < 1, 1, 0)"));
    auto rep = check_hardy(HardyVariant::T6, f, w, w, p, p);
    CHECK(rep.report.verdict == Verdict::Holds);
    CHECK(rep.lhs_tail_fraction < 0.01);
    CHECK(rep.f_tail_fraction < 0.01);
    CHECK(rep.report.lhs <= rep.report.rhs * (1 + 1e-9) + rep.report.slack);
    CHECK(rep.constants.c_pq == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep.constants.d_p == doctest::Approx(4.0).epsilon(1e-12));
}

TEST_CASE("monotonicity hypotheses are enforced") {
    auto g = Grid::build(Interval{0.0, 4.0}, GridScheme::Uniform, 64);
    auto p = ExponentField::sample(g, *parse_expression("0.4"));
    auto q = ExponentField::sample(g, *parse_expression("0.5"));
    auto w = WeightField::ones(g);
    auto rising = GridFunction::sample(g, *parse_expression("x"));
    CHECK_THROWS_AS(check_hardy(HardyVariant::T6, rising, w, w, p, q), DomainError);
    auto falling = GridFunction::sample(g, *parse_expression("4 - x"));
    CHECK_THROWS_AS(check_hardy(HardyVariant::T7, falling, w, w, p, q), DomainError);
    // exponent ordering p <= q is required as well
    auto f = GridFunction::sample(g, *parse_expression("4 - x"));
    CHECK_THROWS_AS(check_hardy(HardyVariant::T6, f, w, w, q, p), DomainError);
}

TEST_CASE("power-weight admissible region") {
    CHECK(example42_admissible(-4.5, -3.0, 0.2));
    CHECK(!example42_admissible(-5.2, -3.0, 0.2)); // below the strip
    CHECK(!example42_admissible(-3.9, -3.0, 0.2)); // above min(1/p', beta+4+1/p')
    CHECK(!example42_admissible(-4.5, -4.0, 0.2)); // excluded line beta = -4
    CHECK(!example42_admissible(-4.5, -1.0, 0.2)); // beta >= -2
}

TEST_CASE("pointwise bridge under the operator bounds") {
    auto g = Grid::build(Interval{0.0, 1.0}, GridScheme::Uniform, 256);

    auto dec = GridFunction::sample(g, *parse_expression("1/(1+x)"));
    auto b1 = monotone_average_bridge(dec, 0.6, true);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(b1.lhs[i] <= b1.rhs[i] * (1 + 1e-9) + 1e-12);

    auto inc = GridFunction::sample(g, *parse_expression("x"));
    auto b2 = monotone_average_bridge(inc, 0.6, false);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(b2.lhs[i] <= b2.rhs[i] * (1 + 1e-9) + 1e-12);

    // equality for a constant with the origin kernel
    auto one = GridFunction::sample(g, *parse_expression("1"));
    auto b3 = monotone_average_bridge(one, 0.5, true);
    for (std::size_t i = 0; i < g->size(); ++i)
        CHECK(b3.lhs[i] == doctest::Approx(b3.rhs[i]).epsilon(1e-12));
}
