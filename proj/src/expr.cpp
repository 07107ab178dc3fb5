#include "vexle/expr.hpp"

#include <charconv>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <utility>
#include <vector>

namespace vexle {

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : std::runtime_error("parse error at offset " + std::to_string(offset) + ": expected " + expected +
                         ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

ExprPtr Expr::number_node(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Number;
    e->number = v;
    return e;
}

ExprPtr Expr::var_x() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::VarX;
    return e;
}

ExprPtr Expr::var_t() {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::VarT;
    return e;
}

ExprPtr Expr::negate(ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Negate;
    e->a = std::move(a);
    return e;
}

ExprPtr Expr::binary(BinaryOp op, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Binary;
    e->op = op;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr Expr::call1(UnaryFn fn, ExprPtr a) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call1;
    e->fn1 = fn;
    e->a = std::move(a);
    return e;
}

ExprPtr Expr::call2(BinaryFn fn, ExprPtr a, ExprPtr b) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Call2;
    e->fn2 = fn;
    e->a = std::move(a);
    e->b = std::move(b);
    return e;
}

ExprPtr Expr::if_node(ExprPtr lhs, Relation rel, ExprPtr rhs, ExprPtr then_arm, ExprPtr else_arm) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::If;
    e->rel = rel;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    e->c = std::move(then_arm);
    e->d = std::move(else_arm);
    return e;
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        skip_ws();
        ExprPtr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) {
        std::string found;
        if (pos_ >= text_.size()) {
            found = "end of input";
        } else {
            std::size_t len = 1;
            while (pos_ + len < text_.size() && len < 12 && !std::isspace(static_cast<unsigned char>(text_[pos_ + len])))
                ++len;
            found = "'" + std::string(text_.substr(pos_, len)) + "'";
        }
        throw ParseError(pos_, expected, found);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!eat(c)) fail(std::string("'") + c + "'");
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    ExprPtr parse_expr() {
        ExprPtr e = parse_term();
        for (;;) {
            if (eat('+')) {
                e = Expr::binary(BinaryOp::Add, e, parse_term());
            } else if (eat('-')) {
                e = Expr::binary(BinaryOp::Sub, e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_factor();
        for (;;) {
            if (eat('*')) {
                e = Expr::binary(BinaryOp::Mul, e, parse_factor());
            } else if (eat('/')) {
                e = Expr::binary(BinaryOp::Div, e, parse_factor());
            } else {
                return e;
            }
        }
    }

    // "^" binds tighter than unary minus and associates to the right.
    ExprPtr parse_factor() {
        if (eat('-')) return Expr::negate(parse_factor());
        ExprPtr base = parse_primary();
        if (eat('^')) return Expr::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) fail("a number, variable, function call or '('");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_expr();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        fail("a number, variable, function call or '('");
    }

    ExprPtr parse_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0;
        auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin) fail("a numeric literal");
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (!std::isfinite(value)) fail("a finite numeric literal");
        return Expr::number_node(value);
    }

    ExprPtr parse_ident() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string_view name = text_.substr(start, pos_ - start);

        if (name == "x") return Expr::var_x();
        if (name == "t") return Expr::var_t();

        if (name == "exp" || name == "log" || name == "abs") {
            expect('(');
            ExprPtr a = parse_expr();
            expect(')');
            UnaryFn fn = name == "exp" ? UnaryFn::Exp : name == "log" ? UnaryFn::Log : UnaryFn::Abs;
            return Expr::call1(fn, a);
        }
        if (name == "pow") {
            expect('(');
            ExprPtr a = parse_expr();
            expect(',');
            ExprPtr b = parse_expr();
            expect(')');
            return Expr::binary(BinaryOp::Pow, a, b);
        }
        if (name == "min" || name == "max") {
            expect('(');
            ExprPtr a = parse_expr();
            expect(',');
            ExprPtr b = parse_expr();
            expect(')');
            return Expr::call2(name == "min" ? BinaryFn::Min : BinaryFn::Max, a, b);
        }
        if (name == "if") {
            expect('(');
            ExprPtr lhs = parse_expr();
            Relation rel = parse_relation();
            ExprPtr rhs = parse_expr();
            expect(',');
            ExprPtr then_arm = parse_expr();
            expect(',');
            ExprPtr else_arm = parse_expr();
            expect(')');
            return Expr::if_node(lhs, rel, rhs, then_arm, else_arm);
        }
        pos_ = start;
        fail("a known function (exp, log, abs, pow, min, max, if) or variable (x, t)");
    }

    Relation parse_relation() {
        skip_ws();
        if (pos_ < text_.size()) {
            char c = text_[pos_];
            bool has_eq = pos_ + 1 < text_.size() && text_[pos_ + 1] == '=';
            if (c == '<') {
                pos_ += has_eq ? 2 : 1;
                return has_eq ? Relation::Le : Relation::Lt;
            }
            if (c == '>') {
                pos_ += has_eq ? 2 : 1;
                return has_eq ? Relation::Ge : Relation::Gt;
            }
            if (c == '=' && has_eq) {
                pos_ += 2;
                return Relation::Eq;
            }
        }
        fail("a comparison operator (<, <=, >, >=, ==)");
    }
};

double checked_pow(double base, double exponent) {
    if (base == 0.0) {
        if (exponent == 0.0) return 1.0;
        if (exponent < 0.0) throw EvalError("0 raised to a negative power");
        return 0.0;
    }
    double r = std::pow(base, exponent);
    if (std::isnan(r)) throw EvalError("pow domain error (negative base with non-integer exponent)");
    return r;
}

bool relation_holds(Relation rel, double a, double b) {
    switch (rel) {
        case Relation::Lt: return a < b;
        case Relation::Le: return a <= b;
        case Relation::Gt: return a > b;
        case Relation::Ge: return a >= b;
        case Relation::Eq: return a == b;
    }
    return false;
}

std::string format_double(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    (void)ec;
    return std::string(buf, ptr);
}

const char* relation_text(Relation rel) {
    switch (rel) {
        case Relation::Lt: return " < ";
        case Relation::Le: return " <= ";
        case Relation::Gt: return " > ";
        case Relation::Ge: return " >= ";
        case Relation::Eq: return " == ";
    }
    return " ? ";
}

void print_rec(const Expr& e, std::string& out) {
    switch (e.kind) {
        case Expr::Kind::Number:
            out += format_double(e.number);
            return;
        case Expr::Kind::VarX:
            out += 'x';
            return;
        case Expr::Kind::VarT:
            out += 't';
            return;
        case Expr::Kind::Negate:
            out += "(-";
            print_rec(*e.a, out);
            out += ')';
            return;
        case Expr::Kind::Binary: {
            const char* op = e.op == BinaryOp::Add ? " + "
                           : e.op == BinaryOp::Sub ? " - "
                           : e.op == BinaryOp::Mul ? " * "
                           : e.op == BinaryOp::Div ? " / "
                                                   : " ^ ";
            out += '(';
            print_rec(*e.a, out);
            out += op;
            print_rec(*e.b, out);
            out += ')';
            return;
        }
        case Expr::Kind::Call1:
            out += e.fn1 == UnaryFn::Exp ? "exp(" : e.fn1 == UnaryFn::Log ? "log(" : "abs(";
            print_rec(*e.a, out);
            out += ')';
            return;
        case Expr::Kind::Call2:
            out += e.fn2 == BinaryFn::Min ? "min(" : "max(";
            print_rec(*e.a, out);
            out += ", ";
            print_rec(*e.b, out);
            out += ')';
            return;
        case Expr::Kind::If:
            out += "if(";
            print_rec(*e.a, out);
            out += relation_text(e.rel);
            print_rec(*e.b, out);
            out += ", ";
            print_rec(*e.c, out);
            out += ", ";
            print_rec(*e.d, out);
            out += ')';
            return;
    }
}

} // namespace

ExprPtr parse_expression(std::string_view text) { return Parser(text).run(); }

double evaluate(const Expr& e, double x, std::optional<double> t) {
    switch (e.kind) {
        case Expr::Kind::Number:
            return e.number;
        case Expr::Kind::VarX:
            return x;
        case Expr::Kind::VarT:
            if (!t) throw EvalError("variable t used but not bound");
            return *t;
        case Expr::Kind::Negate:
            return -evaluate(*e.a, x, t);
        case Expr::Kind::Binary: {
            double a = evaluate(*e.a, x, t);
            double b = evaluate(*e.b, x, t);
            switch (e.op) {
                case BinaryOp::Add: return a + b;
                case BinaryOp::Sub: return a - b;
                case BinaryOp::Mul: return a * b;
                case BinaryOp::Div: return a / b;
                case BinaryOp::Pow: return checked_pow(a, b);
            }
            return 0;
        }
        case Expr::Kind::Call1: {
            double a = evaluate(*e.a, x, t);
            switch (e.fn1) {
                case UnaryFn::Exp: return std::exp(a);
                case UnaryFn::Log:
                    if (a <= 0) throw EvalError("log of a non-positive value");
                    return std::log(a);
                case UnaryFn::Abs: return std::fabs(a);
            }
            return 0;
        }
        case Expr::Kind::Call2: {
            double a = evaluate(*e.a, x, t);
            double b = evaluate(*e.b, x, t);
            return e.fn2 == BinaryFn::Min ? std::fmin(a, b) : std::fmax(a, b);
        }
        case Expr::Kind::If:
            // Strict in the condition only: exactly one arm is evaluated.
            if (relation_holds(e.rel, evaluate(*e.a, x, t), evaluate(*e.b, x, t)))
                return evaluate(*e.c, x, t);
            return evaluate(*e.d, x, t);
    }
    return 0;
}

std::string print_expression(const Expr& e) {
    std::string out;
    print_rec(e, out);
    return out;
}

bool structurally_equal(const Expr& lhs, const Expr& rhs) {
    if (lhs.kind != rhs.kind) return false;
    auto eq = [](const ExprPtr& a, const ExprPtr& b) {
        if (!a && !b) return true;
        if (!a || !b) return false;
        return structurally_equal(*a, *b);
    };
    switch (lhs.kind) {
        case Expr::Kind::Number:
            // Bitwise comparison so printed/reparsed literals match exactly.
            return lhs.number == rhs.number || (std::isnan(lhs.number) && std::isnan(rhs.number));
        case Expr::Kind::VarX:
        case Expr::Kind::VarT:
            return true;
        case Expr::Kind::Negate:
            return eq(lhs.a, rhs.a);
        case Expr::Kind::Binary:
            return lhs.op == rhs.op && eq(lhs.a, rhs.a) && eq(lhs.b, rhs.b);
        case Expr::Kind::Call1:
            return lhs.fn1 == rhs.fn1 && eq(lhs.a, rhs.a);
        case Expr::Kind::Call2:
            return lhs.fn2 == rhs.fn2 && eq(lhs.a, rhs.a) && eq(lhs.b, rhs.b);
        case Expr::Kind::If:
            return lhs.rel == rhs.rel && eq(lhs.a, rhs.a) && eq(lhs.b, rhs.b) && eq(lhs.c, rhs.c) &&
                   eq(lhs.d, rhs.d);
    }
    return false;
}

bool uses_t(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number:
        case Expr::Kind::VarX:
            return false;
        case Expr::Kind::VarT:
            return true;
        case Expr::Kind::Negate:
        case Expr::Kind::Call1:
            return uses_t(*e.a);
        case Expr::Kind::Binary:
        case Expr::Kind::Call2:
            return uses_t(*e.a) || uses_t(*e.b);
        case Expr::Kind::If:
            return uses_t(*e.a) || uses_t(*e.b) || uses_t(*e.c) || uses_t(*e.d);
    }
    return false;
}

} // namespace vexle
