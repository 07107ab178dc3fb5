#include "doctest.h"

#include <cmath>
#include <string>

#include "vexle/sequences.hpp"

using namespace vexle;

TEST_CASE("exponent sequence validation") {
    CHECK_NOTHROW(ExponentSeq::make({1.0, 0.9, 0.5}));
    CHECK_THROWS_AS(ExponentSeq::make({}), DomainError);
    CHECK_THROWS_WITH_AS(ExponentSeq::make({0.5, 0.6}),
                         "exponent sequence must be nonincreasing, index 2", DomainError);
    CHECK_THROWS_AS(ExponentSeq::make({1.2, 0.5}), DomainError);
    CHECK_THROWS_AS(ExponentSeq::make({0.9, 0.5}, 0.6), DomainError); // bound above a term
    auto p = ExponentSeq::make({0.9, 0.5});
    CHECK(p.p_lo == 0.5); // defaults to the last term
}

TEST_CASE("chain input validation") {
    auto p = ExponentSeq::make({0.9, 0.8});
    CHECK_THROWS_WITH_AS(check_sequence_inequality({0.5, 1.0}, p, SequenceMode::FiniteM),
                         "x_n^{p_n} must be nonincreasing, first violation at index 2",
                         DomainError);
    CHECK_THROWS_AS(check_sequence_inequality({1.0, -0.5}, p, SequenceMode::FiniteM), DomainError);
    CHECK_THROWS_AS(check_sequence_inequality({1.0}, p, SequenceMode::FiniteM), DomainError);
}

TEST_CASE("three-term chain against a long double oracle") {
    std::vector<double> x{2.0, 1.5, 1.0};
    auto p = ExponentSeq::make({0.9, 0.8, 0.7});

    long double mid = 0, rhs = 0, lhs_sum = 0;
    const long double e = 0.7L;
    for (int n = 1; n <= 3; ++n) {
        long double xp = powl((long double)x[n - 1], (long double)p.values[n - 1]);
        rhs += xp;
        mid += xp * (powl((long double)n, (long double)p.values[n - 1]) -
                     powl((long double)(n - 1), (long double)p.values[n - 1]));
        lhs_sum += powl((long double)x[n - 1], (long double)p.values[n - 1] / e);
    }
    long double lhs = powl(lhs_sum, e);

    auto rep = check_sequence_inequality(x, p, SequenceMode::FiniteM);
    CHECK(rep.m == 3);
    CHECK(rep.lhs == doctest::Approx((double)lhs).epsilon(1e-12));
    CHECK(rep.mid == doctest::Approx((double)mid).epsilon(1e-12));
    CHECK(rep.rhs == doctest::Approx((double)rhs).epsilon(1e-12));
    CHECK(rep.left_holds);
    CHECK(rep.right_holds);

    // Limit mode swaps the left exponent for p_lo and weakens the left side.
    auto lim = check_sequence_inequality(x, ExponentSeq::make({0.9, 0.8, 0.7}, 0.5),
                                         SequenceMode::Limit);
    CHECK(lim.left_holds);
    CHECK(lim.right_holds);
    CHECK(lim.mid == doctest::Approx((double)mid).epsilon(1e-12));
}

TEST_CASE("constant exponent makes the middle sum telescope") {
    // With p constant, sum x_n^p [n^p - (n-1)^p] telescopes exactly for
    // x_n^p = c: mid = c * m^p.
    std::vector<double> x(10, 1.0);
    for (int i = 0; i < 10; ++i) x[i] = std::pow(2.0, 1.0 / 0.8); // x^p = 2
    auto p = ExponentSeq::make(std::vector<double>(10, 0.8));
    auto rep = check_sequence_inequality(x, p, SequenceMode::FiniteM);
    CHECK(rep.mid == doctest::Approx(2.0 * std::pow(10.0, 0.8)).epsilon(1e-12));
    CHECK(rep.lhs == doctest::Approx(2.0 * std::pow(10.0, 0.8)).epsilon(1e-12));
    CHECK(rep.left_holds);
    CHECK(rep.right_holds);
}

TEST_CASE("square-supported term recovers 1/k") {
    for (std::uint64_t k = 1; k <= 30; ++k) {
        std::uint64_t n = k * k;
        double pn = 0.4 + 0.2 / double(n);
        double term = square_support_term(n, pn, 0.4);
        CHECK(std::pow(term, pn / 0.4) == doctest::Approx(1.0 / double(k)).epsilon(1e-14));
    }
    CHECK(square_support_term(2, 0.5, 0.4) == 0.0);
    CHECK(square_support_term(99999999, 0.5, 0.4) == 0.0);
}

TEST_CASE("divergent counterexample accumulates evidence") {
    auto p_of_n = [](std::uint64_t n) { return 0.4 + 0.2 / double(n); };
    auto ev = example41_sequence(p_of_n, 0.4, 200, {100, 2500, 40000}, 1.0);
    REQUIRE(ev.checkpoints.size() >= 3);
    CHECK(ev.evidence_K > 0);
    CHECK(ev.p_hi == doctest::Approx(0.6));
    // partial ratios grow along the checkpoints
    for (std::size_t i = 1; i < ev.checkpoints.size(); ++i)
        CHECK(ev.checkpoints[i].ratio > ev.checkpoints[i - 1].ratio);
    // the middle sum stays bounded while the left side grows like a harmonic sum
    CHECK(ev.checkpoints.back().ratio > 1.0);
}

TEST_CASE("counterexample hypothesis gate") {
    auto too_big = [](std::uint64_t n) { return n == 1 ? 0.8 : 0.5; };
    CHECK_THROWS_WITH_AS(example41_sequence(too_big, 0.5, 100, {100}),
                         "counterexample needs p_hi < (p_lo + 1)/2", DomainError);
}
