#include "flowcalc/error.hpp"
#include "flowcalc/exterior.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace flowcalc;

namespace {

GradedElement e(int dim, std::vector<int> idx, double c = 1.0) { return GradedElement::blade(MultiIndex(dim, idx), c); }

GradedElement vec(std::vector<double> v) { return GradedElement::vector(v); }

} // namespace

TEST_SUITE("exterior") {

TEST_CASE("multi-index validation and basis order") {
    CHECK_NOTHROW(MultiIndex(3, {}));
    CHECK_THROWS_AS(MultiIndex(3, {2, 1}), DimensionError);
    CHECK_THROWS_AS(MultiIndex(3, {1, 1}), DimensionError);
    CHECK_THROWS_AS(MultiIndex(3, {4}), DimensionError);
    CHECK(MultiIndex(3, {1, 3}).to_string() == "e13");

    const auto b = basis(4, 2);
    REQUIRE(b.size() == 6);
    const std::vector<std::vector<int>> expected{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
    for (std::size_t i = 0; i < b.size(); ++i) {
        CHECK(b[i].indices() == expected[i]);
        CHECK(basis_position(b[i]) == i);
    }
    for (int n = 1; n <= 6; ++n) {
        std::size_t total = 0;
        for (int m = 0; m <= n; ++m) total += basis(n, m).size();
        CHECK(total == (std::size_t{1} << n));
    }
}

TEST_CASE("coefficient count must match the grade") {
    CHECK_THROWS_AS(GradedElement(3, 2, {1.0, 2.0}), DimensionError);
    CHECK_THROWS_AS(GradedElement(3, 4, {}), DimensionError);
    CHECK(GradedElement::zero(5, 2).size() == 10);
}

TEST_CASE("wedge examples") {
    CHECK(wedge(e(3, {1}), e(3, {2})) == e(3, {1, 2}));
    CHECK(wedge(e(3, {1}), e(3, {1})).is_zero());
    CHECK(approx_equal(wedge(e(3, {1}) + e(3, {2}), e(3, {2})), e(3, {1, 2})));
    CHECK(wedge(e(3, {2}), e(3, {1})) == e(3, {1, 2}, -1.0));
}

TEST_CASE("wedge errors") {
    CHECK_THROWS_AS(wedge(e(3, {1, 2}), e(3, {1, 3})), GradeOverflowError);
    CHECK_NOTHROW(wedge(e(3, {1, 2}), e(3, {3})));
    CHECK_THROWS_AS(wedge(e(3, {1}), e(4, {1})), DimensionError);
    CHECK_THROWS_AS(wedge(e(3, {1}), e(3, {2}).as(Space::form)), DimensionError);
}

TEST_CASE("scalar product, norm and normalized measure examples") {
    CHECK(scalar_product(e(3, {1, 2}), e(3, {1, 2})) == 1.0);
    CHECK(scalar_product(e(3, {1, 2}), e(3, {1, 3})) == 0.0);
    const GradedElement tilted = wedge(e(3, {1}) + e(3, {2}), e(3, {3}));
    CHECK(scalar_product(tilted, e(3, {1, 3})) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(norm(e(3, {1}, 3.0)) == 3.0);
    CHECK(norm(e(3, {1, 2}, 3.0) + e(3, {1, 3}, 4.0)) == 5.0);
    CHECK(norm(tilted) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(normalized_measure(e(3, {1}), e(3, {1})) == 1.0);
    CHECK(normalized_measure(e(3, {1}), e(3, {2})) == 0.0);
    CHECK(normalized_measure(e(3, {1}), e(3, {1}) + e(3, {2})) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(normalized_measure(e(3, {1}), GradedElement::zero(3, 1)), InvalidArgument);
    CHECK_THROWS_AS(scalar_product(e(3, {1}), e(3, {1, 2})), DimensionError);
}

TEST_CASE("normalized measure is one exactly for positive multiples") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 2 + trial % 4;
        const GradedElement u = oracle::random_element(n, trial % (n + 1), gen);
        if (u.is_zero()) continue;
        CHECK(normalized_measure(u, 2.5 * u) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(normalized_measure(u, -0.5 * u) == doctest::Approx(-1.0).epsilon(1e-15));
    }
}

TEST_CASE("hodge dual examples and orientation table") {
    CHECK(hodge_dual(e(3, {1})) == e(3, {2, 3}));
    CHECK(hodge_dual(e(3, {2})) == e(3, {1, 3}, -1.0));
    CHECK(hodge_dual(e(3, {3})) == e(3, {1, 2}));
    CHECK(hodge_dual(e(3, {1, 2})) == e(3, {3}));
    CHECK(hodge_dual(hodge_dual(e(4, {1, 2}))) == e(4, {1, 2}));
    CHECK(hodge_dual(GradedElement::scalar(4, 1.0)) == GradedElement::volume(4));
    CHECK(hodge_dual(GradedElement::volume(4)) == GradedElement::scalar(4, 1.0));
    CHECK(hodge_dual(e(2, {1})) == e(2, {2}));
    CHECK(hodge_dual(e(2, {2})) == e(2, {1}, -1.0));
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m <= n; ++m) {
            std::vector<int> first, rest;
            for (int i = 1; i <= m; ++i) first.push_back(i);
            for (int i = m + 1; i <= n; ++i) rest.push_back(i);
            CHECK(hodge_dual(e(n, first)) == e(n, rest));
        }
    }
}

TEST_CASE("form-vector pairing examples") {
    auto dx = [](std::vector<int> idx, double c = 1.0) { return GradedElement::blade(MultiIndex(3, idx), c, Space::form); };
    CHECK(pair_form_vector(dx({1}), e(3, {1})) == 1.0);
    CHECK(pair_form_vector(dx({1}), e(3, {2})) == 0.0);
    CHECK(pair_form_vector(dx({1, 2}, 2.0) + dx({1, 3}), e(3, {1, 2})) == 2.0);
    CHECK_THROWS_AS(pair_form_vector(e(3, {1}), e(3, {1})), DimensionError);
    CHECK_THROWS_AS(pair_form_vector(dx({1}), e(3, {1, 2})), DimensionError);
    const GradedElement f = dx({1}, 0.5) + dx({3}, 2.0);
    CHECK(pair_form_vector(f, f.as(Space::vector)) == scalar_product(f, f));
}

TEST_CASE("blade from vectors examples") {
    const std::vector<std::vector<double>> a{{1, 0, 0}, {0, 1, 0}};
    CHECK(blade_from_vectors(a) == e(3, {1, 2}));
    const std::vector<std::vector<double>> b{{1, 0, 0}, {2, 0, 0}};
    CHECK(blade_from_vectors(b).is_zero());
    const std::vector<std::vector<double>> c{{1, 1, 0}, {0, 1, 0}};
    CHECK(approx_equal(blade_from_vectors(c), e(3, {1, 2})));
}

TEST_CASE("blade norm is the parallelepiped volume") {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 300; ++trial) {
        const int n = 2 + trial % 4;
        const int m = 1 + trial % n;
        std::vector<std::vector<double>> vs;
        for (int k = 0; k < m; ++k) vs.push_back(oracle::random_vector(n, gen));
        std::vector<std::vector<double>> gram(m, std::vector<double>(m));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) gram[i][j] = oracle::dot(vs[i], vs[j]);
        }
        const double volume = std::sqrt(std::max(0.0, oracle::determinant(gram)));
        CHECK(norm(blade_from_vectors(vs)) == doctest::Approx(volume).epsilon(1e-10));
    }
}

TEST_CASE("property: anticommutativity") {
    std::mt19937_64 gen(1);
    for (int n = 2; n <= 5; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            const int p = trial % (n + 1);
            const int q = std::uniform_int_distribution<int>(0, n - p)(gen);
            const GradedElement u = oracle::random_element(n, p, gen);
            const GradedElement v = oracle::random_element(n, q, gen);
            const double sign = (p * q) % 2 ? -1.0 : 1.0;
            CHECK(oracle::max_abs_diff(wedge(u, v), sign * wedge(v, u)) <= 1e-12);
        }
    }
}

TEST_CASE("property: wedge agrees with permutation expansion and is associative") {
    std::mt19937_64 gen(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 4;
        const int p = std::uniform_int_distribution<int>(0, n)(gen);
        const int q = std::uniform_int_distribution<int>(0, n - p)(gen);
        const int r = std::uniform_int_distribution<int>(0, n - p - q)(gen);
        const GradedElement u = oracle::random_element(n, p, gen);
        const GradedElement v = oracle::random_element(n, q, gen);
        const GradedElement w = oracle::random_element(n, r, gen);
        CHECK(oracle::max_abs_diff(wedge(u, v), oracle::wedge_expand({u, v})) <= 1e-12);
        const GradedElement left = wedge(wedge(u, v), w);
        const GradedElement right = wedge(u, wedge(v, w));
        CHECK(oracle::max_abs_diff(left, right) <= 1e-12);
        CHECK(oracle::max_abs_diff(left, oracle::wedge_expand({u, v, w})) <= 1e-12);
    }
}

TEST_CASE("property: positive definiteness") {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 5;
        const GradedElement u = oracle::random_element(n, trial % (n + 1), gen);
        if (u.is_zero()) continue;
        CHECK(scalar_product(u, u) > 0.0);
    }
    CHECK(norm(GradedElement::zero(4, 2)) == 0.0);
}

TEST_CASE("property: Gram determinant identity") {
    std::mt19937_64 gen(4);
    for (int trial = 0; trial < 500; ++trial) {
        const int n = 2 + trial % 4;
        const int m = 1 + trial % std::min(3, n);
        std::vector<std::vector<double>> a, b;
        for (int k = 0; k < m; ++k) {
            a.push_back(oracle::random_vector(n, gen));
            b.push_back(oracle::random_vector(n, gen));
        }
        std::vector<std::vector<double>> gram(m, std::vector<double>(m));
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) gram[i][j] = oracle::dot(a[i], b[j]);
        }
        CHECK(std::abs(scalar_product(blade_from_vectors(a), blade_from_vectors(b)) - oracle::determinant(gram)) <= 1e-10);
    }
}

TEST_CASE("property: Hodge involution, isometry and duality product") {
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + trial % 4;
        const int m = std::uniform_int_distribution<int>(0, n)(gen);
        const GradedElement u = oracle::random_element(n, m, gen);
        const GradedElement v = oracle::random_element(n, m, gen);
        const double sign = (m * (n - m)) % 2 ? -1.0 : 1.0;
        CHECK(oracle::max_abs_diff(hodge_dual(hodge_dual(u)), sign * u) <= 1e-14);
        CHECK(std::abs(scalar_product(u, v) - scalar_product(hodge_dual(u), hodge_dual(v))) <= 1e-12);
        const GradedElement dual_product = wedge(u, hodge_dual(v));
        CHECK(oracle::max_abs_diff(dual_product, scalar_product(u, v) * GradedElement::volume(n)) <= 1e-12);
        CHECK(std::abs(norm(hodge_dual(u)) - norm(u)) <= 1e-12);
    }
}

TEST_CASE("property: normalized measure stays within [-1, 1]") {
    std::mt19937_64 gen(6);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 1 + trial % 5;
        const int m = trial % (n + 1);
        const GradedElement u = oracle::random_element(n, m, gen);
        const GradedElement v = oracle::random_element(n, m, gen);
        if (u.is_zero() || v.is_zero()) continue;
        CHECK(std::abs(normalized_measure(u, v)) <= 1.0 + 1e-12);
    }
}

TEST_CASE("merge sign matches the bubble-sort parity") {
    for (std::uint32_t a = 0; a < 64; ++a) {
        for (std::uint32_t b = 0; b < 64; ++b) {
            std::vector<int> seq;
            for (int i = 0; i < 6; ++i) {
                if (a & (1u << i)) seq.push_back(i + 1);
            }
            for (int i = 0; i < 6; ++i) {
                if (b & (1u << i)) seq.push_back(i + 1);
            }
            CHECK(merge_sign(a, b) == oracle::sort_sign(seq));
        }
    }
}

TEST_CASE("vector and form spaces are identified coefficientwise") {
    const GradedElement f = vec({1.0, -2.0, 0.5}).as(Space::form);
    CHECK(f.space() == Space::form);
    CHECK(f.as(Space::vector) == vec({1.0, -2.0, 0.5}));
    CHECK(norm(f) == norm(vec({1.0, -2.0, 0.5})));
}

TEST_CASE("element text round trip") {
    CHECK(to_string(parse_element("2*e12 - e13 + 0.5*e23", 3)) == "2*e12 - e13 + 0.5*e23");
    CHECK(parse_element("e1 + e1", 3) == e(3, {1}, 2.0));
    CHECK(parse_element("dx2", 3).space() == Space::form);
    CHECK(parse_element("3", 4) == GradedElement::scalar(4, 3.0));
    CHECK(parse_element("e1_10", 12) == e(12, {1, 10}));
    CHECK(to_string(GradedElement::zero(3, 2)) == "0");
    CHECK(to_string(-1.0 * e(3, {2})) == "-e2");
    CHECK_THROWS_AS(parse_element("e1 + e12", 3), DimensionError);
    CHECK_THROWS_AS(parse_element("e1 + dx2", 3), ParseError);
    CHECK_THROWS_AS(parse_element("e4", 3), ParseError);
    CHECK_THROWS_AS(parse_element("", 3), ParseError);
    CHECK_THROWS_AS(parse_element("2*", 3), ParseError);

    std::mt19937_64 gen(8);
    for (int trial = 0; trial < 200; ++trial) {
        const int n = 1 + trial % 6;
        const GradedElement u = oracle::random_element(n, trial % (n + 1), gen);
        CHECK(parse_element(to_string(u), n) == u);
    }
}

}
