#include "doctest.h"

#include <cmath>
#include <random>

#include "vexle/expr.hpp"

using namespace vexle;

namespace {

double ev(const char* text, double x, std::optional<double> t = std::nullopt) {
    return evaluate(*parse_expression(text), x, t);
}

// Random AST with parser-image invariants: number literals are nonnegative
// (the grammar spells negative constants as unary minus).
ExprPtr random_expr(std::mt19937_64& g, int depth) {
    auto roll = g() % (depth <= 0 ? 3 : 10);
    auto sub = [&] { return random_expr(g, depth - 1); };
    switch (roll) {
        case 0: return Expr::number_node(static_cast<double>(g() % 64) / 16.0);
        case 1: return Expr::var_x();
        case 2: return Expr::var_t();
        case 3: return Expr::negate(sub());
        case 4:
        case 5: return Expr::binary(static_cast<BinaryOp>(g() % 5), sub(), sub());
        case 6: return Expr::call1(static_cast<UnaryFn>(g() % 3), sub());
        case 7: return Expr::call2(static_cast<BinaryFn>(g() % 2), sub(), sub());
        default:
            return Expr::if_node(sub(), static_cast<Relation>(g() % 5), sub(), sub(), sub());
    }
}

} // namespace

TEST_CASE("precedence and associativity") {
    CHECK(ev("2+3*4^2", 0) == 50.0);
    CHECK(ev("-2^2", 0) == -4.0);
    CHECK(ev("2^3^2", 0) == 512.0); // right-associative power
    CHECK(ev("2-3-4", 0) == -5.0);
    CHECK(ev("12/4/3", 0) == 1.0);
    CHECK(ev("(2+3)*4", 0) == 20.0);
    CHECK(ev("0^0", 0) == 1.0);
}

TEST_CASE("variables, functions and branches") {
    CHECK(ev("x^2 + 1", 3) == 10.0);
    CHECK(ev("x + t", 2, 5) == 7.0);
    CHECK(ev("min(x, 2)", 3) == 2.0);
    CHECK(ev("max(x, 2)", 3) == 3.0);
    CHECK(ev("abs(x - 4)", 1) == 3.0);
    CHECK(ev("exp(log(2.5))", 1) == doctest::Approx(2.5).epsilon(1e-14));
    CHECK(ev("if(x < 1, 5, 7)", 0.5) == 5.0);
    CHECK(ev("if(x < 1, 5, 7)", 2.0) == 7.0);
    CHECK(ev("if(x >= 1, 5, 7)", 1.0) == 5.0);
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(ev("log(x)", 0.0), EvalError);
    CHECK_THROWS_AS(ev("log(0 - 1)", 1.0), EvalError);
    CHECK_THROWS_AS(ev("0^(0-1)", 0.0), EvalError);
    CHECK_THROWS_AS(ev("t", 1.0), EvalError); // t unbound
}

TEST_CASE("parse errors carry byte offsets") {
    auto offset_of = [](const char* text) {
        try {
            parse_expression(text);
        } catch (const ParseError& e) {
            return e.offset();
        }
        return static_cast<std::size_t>(-1);
    };
    CHECK(offset_of("2 +") == 3);
    CHECK(offset_of("2 + @") == 4);
    CHECK(offset_of("min(1 2)") == 6);
    CHECK(offset_of("(1 + 2") == 6);
    CHECK(offset_of("foo(1)") == 0);
    CHECK_THROWS_AS(parse_expression("1 + 2 extra"), ParseError);
    CHECK_THROWS_AS(parse_expression(""), ParseError);
}

TEST_CASE("print/parse round trip is structural identity") {
    std::mt19937_64 g(42);
    for (int i = 0; i < 1000; ++i) {
        auto e = random_expr(g, 6);
        auto text = print_expression(*e);
        auto back = parse_expression(text);
        CHECK(structurally_equal(*e, *back));
    }
}

TEST_CASE("uses_t detection") {
    CHECK(uses_t(*parse_expression("x + t")));
    CHECK(uses_t(*parse_expression("if(x < 1, 1, t)")));
    CHECK(!uses_t(*parse_expression("x * exp(x)")));
}
