#include "flowcalc/error.hpp"
#include "flowcalc/field.hpp"

#include <doctest.h>

#include <cmath>

using namespace flowcalc;

TEST_SUITE("field") {

TEST_CASE("flow file examples") {
    const FlowField rot = parse_flow_spec("dim=2; a1=-x2; a2=x1");
    CHECK(rot.dim() == 2);
    CHECK(eval_flow(rot, std::vector<double>{1, 2}) == std::vector<double>{-2, 1});

    const FlowField line = parse_flow_spec("dim=1; a1=2+3*x1");
    CHECK(eval_flow(line, std::vector<double>{2})[0] == 8.0);

    CHECK_THROWS_AS(parse_flow_spec("dim=2; a1=x3; a2=0"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("a1=x1"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("dim=0"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("dim=2; a1=x1"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("dim=2; a1=x1; a2=x2; a1=0"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("dim=2; a1=x1; a2=x2; b=0"), ParseError);
    CHECK_THROWS_AS(parse_flow_spec("dim=2; a1=x1; a2=x2; phi=t"), ParseError);
}

TEST_CASE("flow file layout: comments, blank lines, error positions") {
    const FlowField f = parse_flow_spec("# rotation\n\ndim = 2\na1 = -x2   # first\na2 = x1\n");
    CHECK(eval_flow(f, std::vector<double>{3, 4}) == std::vector<double>{-4, 3});
    try {
        parse_flow_spec("dim = 2\na1 = x1\na2 = x1 +\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }
}

TEST_CASE("evaluation examples") {
    const FlowField grad_xy = parse_flow_spec("dim=2; a1=x2; a2=x1");
    CHECK(eval_flow(grad_xy, std::vector<double>{3, 5}) == std::vector<double>{5, 3});
    const FlowField s = parse_flow_spec("dim=1; a1=sin(x1)");
    CHECK(eval_flow(s, std::vector<double>{0})[0] == 0.0);
    CHECK_THROWS_AS(eval_flow(s, std::vector<double>{0, 1}), DimensionError);
}

TEST_CASE("domain errors name the component") {
    const FlowField f = parse_flow_spec("dim=2; a1=x1; a2=log(x2)");
    try {
        eval_flow(f, std::vector<double>{1, -1});
        FAIL("expected a domain error");
    } catch (const DomainError& e) {
        CHECK(std::string(e.what()).find("a2") != std::string::npos);
    }
}

TEST_CASE("jacobian examples") {
    const FlowField rot = parse_flow_spec("dim=2; a1=-x2; a2=x1");
    for (double h : {1e-1, 1e-4, 0.37}) {
        const Matrix j = numeric_jacobian(rot, std::vector<double>{0.3, -1.7}, h);
        CHECK(j(0, 0) == 0.0);
        CHECK(std::abs(j(0, 1) + 1.0) <= 1e-11);
        CHECK(std::abs(j(1, 0) - 1.0) <= 1e-11);
        CHECK(j(1, 1) == 0.0);
    }
    const FlowField sq = parse_flow_spec("dim=2; a1=x1^2; a2=0");
    CHECK(std::abs(numeric_jacobian(sq, std::vector<double>{1, 0}, 1e-3)(0, 0) - 2.0) <= 1e-9);
    const FlowField c = parse_flow_spec("dim=3; a1=1; a2=-2; a3=pi");
    const Matrix z = numeric_jacobian(c, std::vector<double>{1, 2, 3});
    for (int i = 0; i < 3; ++i) {
        for (int k = 0; k < 3; ++k) CHECK(z(i, k) == 0.0);
    }
    CHECK_THROWS_AS(numeric_jacobian(c, std::vector<double>{1, 2, 3}, 0.0), InvalidArgument);
}

TEST_CASE("gradient flow examples") {
    const FlowField one = gradient_flow(parse_expression("x1", Scope{.dim = 1}), 1);
    CHECK(one.is_gradient());
    CHECK(eval_flow(one, std::vector<double>{0.7})[0] == doctest::Approx(1.0).epsilon(1e-10));

    const FlowField saddle = gradient_flow(parse_expression("x1^2-x2^2", Scope{.dim = 2}), 2, 1e-3);
    const auto g = eval_flow(saddle, std::vector<double>{0.6, -0.2});
    CHECK(std::abs(g[0] - 1.2) <= 1e-12);
    CHECK(std::abs(g[1] - 0.4) <= 1e-12);

    const FlowField s = gradient_flow(parse_expression("sin(x1)", Scope{.dim = 1}), 1, 1e-4);
    CHECK(std::abs(eval_flow(s, std::vector<double>{0})[0] - 1.0) <= 1e-8);
    CHECK(s.potential_at(std::vector<double>{std::numbers::pi / 2}) == 1.0);

    const FlowField from_file = parse_flow_spec("dim=2; phi=x1*x2");
    CHECK(from_file.is_gradient());
    CHECK(std::abs(eval_flow(from_file, std::vector<double>{3, 5})[0] - 5.0) <= 1e-9);
}

TEST_CASE("jacobian error is second order in the step") {
    // Gradient of sin(x1) cosh(x2), written out analytically.
    const FlowField f = parse_flow_spec("dim=2; a1=cos(x1)*(exp(x2)+exp(-x2))/2; a2=sin(x1)*(exp(x2)-exp(-x2))/2");
    const std::vector<double> x{0.7, 0.4};
    const double ch = std::cosh(x[1]), sh = std::sinh(x[1]);
    const double exact[2][2] = {{-std::sin(x[0]) * ch, std::cos(x[0]) * sh}, {std::cos(x[0]) * sh, std::sin(x[0]) * ch}};
    std::vector<double> errors;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
        const Matrix j = numeric_jacobian(f, x, h);
        double worst = 0.0;
        for (int i = 0; i < 2; ++i) {
            for (int k = 0; k < 2; ++k) worst = std::max(worst, std::abs(j(i, k) - exact[i][k]));
        }
        errors.push_back(worst);
    }
    for (std::size_t i = 0; i + 1 < errors.size(); ++i) {
        const double order = std::log2(errors[i] / errors[i + 1]);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

}
