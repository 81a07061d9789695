#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dichospec/expr.hpp"

using namespace dichospec;
using namespace dichospec::expr;

namespace {
double eval(const std::string& text, double t) { return evaluate(parse_expression(text), t); }
} // namespace

TEST_CASE("literals, variable and constants") {
    CHECK(eval("42", 0.0) == doctest::Approx(42.0));
    CHECK(eval("1.5e-3", 0.0) == doctest::Approx(1.5e-3));
    CHECK(eval("t", 7.25) == doctest::Approx(7.25));
    CHECK(eval("pi", 0.0) == doctest::Approx(std::numbers::pi));
    CHECK(eval("e", 0.0) == doctest::Approx(std::numbers::e));
}

TEST_CASE("precedence and associativity") {
    CHECK(eval("2 + 3*4", 0.0) == doctest::Approx(14.0));
    CHECK(eval("2*3 + 4", 0.0) == doctest::Approx(10.0));
    CHECK(eval("2 - 3 - 4", 0.0) == doctest::Approx(-5.0));
    CHECK(eval("12 / 3 / 2", 0.0) == doctest::Approx(2.0));
    CHECK(eval("2^3^2", 0.0) == doctest::Approx(512.0)); // right-associative
    CHECK(eval("-2^2", 0.0) == doctest::Approx(-4.0));   // ^ binds tighter than unary -
    CHECK(eval("(2 + 3)*4", 0.0) == doctest::Approx(20.0));
    CHECK(eval("2*t^2 - t", 3.0) == doctest::Approx(15.0));
}

TEST_CASE("function calls") {
    CHECK(eval("sin(t)", std::numbers::pi / 2) == doctest::Approx(1.0));
    CHECK(eval("cos(0)", 0.0) == doctest::Approx(1.0));
    CHECK(eval("tan(pi/4)", 0.0) == doctest::Approx(1.0));
    CHECK(eval("exp(1)", 0.0) == doctest::Approx(std::numbers::e));
    CHECK(eval("ln(e)", 0.0) == doctest::Approx(1.0));
    CHECK(eval("sqrt(9)", 0.0) == doctest::Approx(3.0));
    CHECK(eval("abs(-3.5)", 0.0) == doctest::Approx(3.5));
    CHECK(eval("sin(ln(t)) + cos(ln(t))", std::exp(std::numbers::pi / 2)) ==
          doctest::Approx(1.0));
    CHECK(eval("t*sin(t) + 1", 2.5) == doctest::Approx(2.5 * std::sin(2.5) + 1.0));
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(parse_expression(""), ParseError);
    CHECK_THROWS_AS(parse_expression("2 +"), ParseError);
    CHECK_THROWS_AS(parse_expression("sin t"), ParseError); // call needs parentheses
    CHECK_THROWS_AS(parse_expression("foo(t)"), ParseError);
    CHECK_THROWS_AS(parse_expression("(1 + 2"), ParseError);
    CHECK_THROWS_AS(parse_expression("1 + 2)"), ParseError);
    try {
        parse_expression("1 + @");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.offset() == 4);
    }
}

TEST_CASE("evaluation domain errors") {
    CHECK_THROWS_AS(eval("ln(t)", 0.0), DomainError);
    CHECK_THROWS_AS(eval("ln(t)", -1.0), DomainError);
    CHECK_THROWS_AS(eval("sqrt(t)", -1.0), DomainError);
    CHECK_THROWS_AS(eval("1/t", 0.0), DomainError);
}

TEST_CASE("serialize round-trips through the parser") {
    for (const char* text : {"2*t^2 - t", "sin(ln(t)) + cos(ln(t))", "-(t + 1)*sin(t)",
                             "4 - 2*t*sin(t)", "t*(sin(t) + 1)", "2^3^2", "1 - (2 - 3)"}) {
        Ast ast = parse_expression(text);
        Ast again = parse_expression(serialize(ast));
        CHECK(structurally_equal(ast, again));
        for (double t : {0.5, 1.0, 3.75, 100.0})
            CHECK(evaluate(ast, t) == doctest::Approx(evaluate(again, t)).epsilon(1e-15));
    }
}

TEST_CASE("structural equality distinguishes different trees") {
    CHECK(structurally_equal(parse_expression("t + 1"), parse_expression("t + 1")));
    CHECK_FALSE(structurally_equal(parse_expression("t + 1"), parse_expression("1 + t")));
    CHECK_FALSE(structurally_equal(parse_expression("sin(t)"), parse_expression("cos(t)")));
}

TEST_CASE("programmatic construction matches parsed trees") {
    // t*sin(t) + 1 built by hand
    auto by_hand = Ast(make_binary(NodeKind::Add,
                                   make_binary(NodeKind::Mul, make_variable(),
                                               make_call(Func::Sin, make_variable())),
                                   make_number(1.0)));
    CHECK(structurally_equal(by_hand, parse_expression("t*sin(t) + 1")));
}
