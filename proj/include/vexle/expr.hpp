#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vexle {

/// Raised when an expression fails to parse. Carries the byte offset of the
/// failure, a description of what was expected and what was actually seen.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t offset, std::string expected, std::string found);
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }
    const std::string& found() const noexcept { return found_; }

private:
    std::size_t offset_;
    std::string expected_;
    std::string found_;
};

/// Raised on evaluation domain errors (log of a non-positive value,
/// 0 raised to a negative power, unbound second variable, ...).
class EvalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class UnaryFn { Exp, Log, Abs };
enum class BinaryFn { Min, Max };
enum class Relation { Lt, Le, Gt, Ge, Eq };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// Immutable expression tree over variables x and t. Safe for concurrent
/// reads once built.
struct Expr {
    enum class Kind { Number, VarX, VarT, Negate, Binary, Call1, Call2, If };

    Kind kind;
    double number = 0.0;   // Number
    BinaryOp op{};         // Binary
    UnaryFn fn1{};         // Call1
    BinaryFn fn2{};        // Call2
    Relation rel{};        // If condition
    ExprPtr a, b, c, d;    // Negate(a) | Binary(a,b) | Call1(a) | Call2(a,b) | If(a rel b, c, d)

    static ExprPtr number_node(double v);
    static ExprPtr var_x();
    static ExprPtr var_t();
    static ExprPtr negate(ExprPtr a);
    static ExprPtr binary(BinaryOp op, ExprPtr a, ExprPtr b);
    static ExprPtr call1(UnaryFn fn, ExprPtr a);
    static ExprPtr call2(BinaryFn fn, ExprPtr a, ExprPtr b);
    static ExprPtr if_node(ExprPtr lhs, Relation rel, ExprPtr rhs, ExprPtr then_arm, ExprPtr else_arm);
};

/// Parses the expression grammar:
///   expr    := term { ("+"|"-") term }
///   term    := factor { ("*"|"/") factor }
///   factor  := "-" factor | primary [ "^" factor ]
///   primary := number | "x" | "t" | ident "(" args ")" | "(" expr ")"
/// "^" is right-associative and binds tighter than unary minus, so
/// "-2^2" evaluates to -4. Throws ParseError.
ExprPtr parse_expression(std::string_view text);

/// Evaluates at x (and t when bound). IEEE double semantics; 0^0 = 1.
/// Throws EvalError on domain errors or when t is used but unbound.
double evaluate(const Expr& e, double x, std::optional<double> t = std::nullopt);

/// Prints a fully parenthesized form such that
/// parse_expression(print_expression(e)) is structurally equal to e.
std::string print_expression(const Expr& e);

bool structurally_equal(const Expr& lhs, const Expr& rhs);

/// True when the expression references the second variable t anywhere.
bool uses_t(const Expr& e);

} // namespace vexle
