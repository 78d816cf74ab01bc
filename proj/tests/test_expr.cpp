#include "flowcalc/error.hpp"
#include "flowcalc/expr.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace flowcalc;

namespace {

double eval_at(std::string_view text, std::vector<double> x, int dim = 3) {
    return evaluate(parse_expression(text, Scope{.dim = dim}), Bindings{.x = x});
}

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

} // namespace

TEST_SUITE("expr") {

TEST_CASE("precedence and associativity") {
    CHECK(eval_at("2+3*x1", {2}, 1) == 8.0);
    CHECK(eval_at("2^3^2", {}) == 512.0);
    CHECK(eval_at("-2^2", {}) == -4.0);
    CHECK(eval_at("2^-1", {}) == 0.5);
    CHECK(eval_at("8/4/2", {}) == 1.0);
    CHECK(eval_at("8-4-2", {}) == 2.0);
    CHECK(eval_at("2*3^2", {}) == 18.0);
    CHECK(eval_at("-x1*x2", {2, 3}) == -6.0);
}

TEST_CASE("names: variables, parameters, constants, aliases") {
    CHECK(eval_at("x+y+z", {1, 2, 4}) == 7.0);
    CHECK_THROWS_AS(parse_expression("x", Scope{.dim = 4}), ParseError);
    CHECK_THROWS_AS(parse_expression("x3", Scope{.dim = 2}), ParseError);
    CHECK_THROWS_AS(parse_expression("x0", Scope{.dim = 2}), ParseError);
    CHECK_THROWS_AS(parse_expression("t", Scope{.dim = 2}), ParseError);
    CHECK_NOTHROW(parse_expression("t", Scope{.dim = 2, .allow_t = true}));
    CHECK_THROWS_AS(parse_expression("u2", Scope{.dim = 3, .parameters = 1}), ParseError);
    CHECK_THROWS_AS(parse_expression("x1", Scope{.dim = 3, .allow_x = false}), ParseError);
    CHECK(eval_at("pi", {}) == std::numbers::pi);
    CHECK(eval_at("e", {}) == std::numbers::e);
    CHECK_THROWS_AS(parse_expression("foo(1)", Scope{.dim = 1}), ParseError);
    CHECK_THROWS_AS(parse_expression("sin", Scope{.dim = 1}), ParseError);
}

TEST_CASE("syntax errors carry line and column") {
    try {
        parse_expression("1 + * 2", Scope{.dim = 1}, 4, 10);
        FAIL("expected a parse error");
    } catch (const ParseError& err) {
        CHECK(err.line() == 4);
        CHECK(err.column() == 14);
        CHECK(std::string(err.what()).find("line 4, column 14") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_expression("(1 + 2", Scope{}), ParseError);
    CHECK_THROWS_AS(parse_expression("1 2", Scope{}), ParseError);
    CHECK_THROWS_AS(parse_expression("", Scope{}), ParseError);
    CHECK_THROWS_AS(parse_expression("1 $ 2", Scope{}), ParseError);
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(eval_at("log(0)", {}), DomainError);
    CHECK_THROWS_AS(eval_at("log(-1)", {}), DomainError);
    CHECK_THROWS_AS(eval_at("sqrt(-1)", {}), DomainError);
    CHECK_THROWS_AS(eval_at("1/0", {}), DomainError);
    CHECK_THROWS_AS(eval_at("(-2)^0.5", {}), DomainError);
    CHECK(eval_at("(-2)^3", {}) == -8.0);
    CHECK(eval_at("(-2)^-2", {}) == 0.25);
    CHECK(eval_at("0^0", {}) == 1.0);
}

TEST_CASE("corpus: parse-print-parse fixpoint and evaluation oracle") {
    const std::vector<std::vector<double>> points{{0.3, 0.7, 1.1}, {1.9, -0.4, 2.5}, {0.05, 3.0, -1.2}};
    REQUIRE(oracle::corpus().size() == 30);
    for (const auto& entry : oracle::corpus()) {
        CAPTURE(entry.text);
        const Expr parsed = parse_expression(entry.text, Scope{.dim = 3});
        const std::string printed = to_string(parsed);
        CAPTURE(printed);
        const Expr reparsed = parse_expression(printed, Scope{.dim = 3});
        CHECK(reparsed == parsed);
        CHECK(to_string(reparsed) == printed);
        for (const auto& p : points) {
            const double expected = entry.value(p[0], p[1], p[2]);
            CHECK(close(evaluate(parsed, Bindings{.x = p}), expected));
            CHECK(close(oracle::eval(parsed, {p}), expected));
            CHECK(Program{parsed}(Bindings{.x = p}) == evaluate(parsed, Bindings{.x = p}));
        }
    }
}

TEST_CASE("property: random trees round-trip and match the recursive oracle") {
    std::mt19937_64 gen(20);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);
    int compared = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        const Expr e = oracle::random_expr(3, 1 + trial % 5, gen);
        const std::string printed = to_string(e);
        CAPTURE(printed);
        CHECK(parse_expression(printed, Scope{.dim = 3}) == e);
        const std::vector<double> x{coord(gen), coord(gen), coord(gen)};
        double expected = 0.0;
        try {
            expected = oracle::eval(e, {x});
        } catch (const std::domain_error&) {
            CHECK_THROWS_AS(evaluate(e, Bindings{.x = x}), DomainError);
            CHECK_THROWS_AS(Program{e}(Bindings{.x = x}), DomainError);
            continue;
        }
        if (!std::isfinite(expected)) continue;
        const double got = evaluate(e, Bindings{.x = x});
        CHECK(close(got, expected));
        CHECK(Program{e}(Bindings{.x = x}) == got);
        ++compared;
    }
    CHECK(compared > 1500);
}

TEST_CASE("printer inserts parentheses only where needed") {
    const Scope s{.dim = 3};
    CHECK(to_string(parse_expression("((x1))+(x2*x3)", s)) == "x1+x2*x3");
    CHECK(to_string(parse_expression("(x1+x2)*x3", s)) == "(x1+x2)*x3");
    CHECK(to_string(parse_expression("x1-(x2+x3)", s)) == "x1-(x2+x3)");
    CHECK(to_string(parse_expression("(x1^x2)^x3", s)) == "(x1^x2)^x3");
    CHECK(to_string(parse_expression("x1^(x2^x3)", s)) == "x1^x2^x3");
    CHECK(to_string(Expr::number(0.1)) == "0.1");
    CHECK(to_string(parse_expression("x1^(-2)", s)) == "x1^(-2)");
    CHECK(to_string(parse_expression("-(x1*x2)", s)) == "-(x1*x2)");
    CHECK(parse_expression("-3", s) == Expr::number(-3.0));
    CHECK(to_string(Expr::number(-2.0) * Expr::x(1)) == "-2*x1");
}

TEST_CASE("variable usage") {
    const auto u = variable_usage(parse_expression("x1 + x3*t + u2", Scope{.dim = 3, .allow_t = true, .parameters = 2}));
    CHECK(u.max_x == 3);
    CHECK(u.uses_t);
    CHECK(u.max_u == 2);
}

}
