#pragma once

// Independent reference implementations used by the unit and acceptance
// tests. None of these call into the library routines they check.

#include "flowcalc/exterior.hpp"
#include "flowcalc/expr.hpp"

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

// ---------------------------------------------------------------------------
// Exterior algebra

/// Parity of the permutation that sorts `seq`, by counting bubble-sort swaps.
/// Returns 0 when an entry repeats.
inline int sort_sign(std::vector<int>& seq) {
    int swaps = 0;
    for (std::size_t pass = 0; pass < seq.size(); ++pass) {
        for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
            if (seq[i] == seq[i + 1]) return 0;
            if (seq[i] > seq[i + 1]) {
                std::swap(seq[i], seq[i + 1]);
                ++swaps;
            }
        }
    }
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (seq[i] == seq[i + 1]) return 0;
    }
    return swaps % 2 ? -1 : 1;
}

using Blades = std::map<std::vector<int>, double>;

inline Blades to_blades(const flowcalc::GradedElement& u) {
    Blades out;
    const auto idx = flowcalc::basis(u.dim(), u.grade());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (u[i] != 0.0) out[idx[i].indices()] += u[i];
    }
    return out;
}

inline flowcalc::GradedElement from_blades(int dim, int grade, const Blades& b,
                                           flowcalc::Space space = flowcalc::Space::vector) {
    std::vector<double> coeffs(flowcalc::binomial(dim, grade), 0.0);
    for (const auto& [indices, c] : b) {
        if (static_cast<int>(indices.size()) != grade) throw std::logic_error("grade mismatch in oracle");
        coeffs[flowcalc::basis_position(flowcalc::MultiIndex(dim, indices))] += c;
    }
    return flowcalc::GradedElement(dim, grade, coeffs, space);
}

/// Wedge of any number of elements by full expansion over basis blades.
inline flowcalc::GradedElement wedge_expand(const std::vector<flowcalc::GradedElement>& factors) {
    const int dim = factors.front().dim();
    int grade = 0;
    std::vector<Blades> parts;
    for (const auto& f : factors) {
        grade += f.grade();
        parts.push_back(to_blades(f));
    }
    Blades result;
    std::function<void(std::size_t, std::vector<int>, double)> expand = [&](std::size_t k, std::vector<int> seq, double c) {
        if (k == parts.size()) {
            const int sign = sort_sign(seq);
            if (sign != 0) result[seq] += sign * c;
            return;
        }
        for (const auto& [indices, coeff] : parts[k]) {
            std::vector<int> next = seq;
            next.insert(next.end(), indices.begin(), indices.end());
            expand(k + 1, next, c * coeff);
        }
    };
    expand(0, {}, 1.0);
    return from_blades(dim, grade, result, factors.front().space());
}

/// Determinant by Leibniz permutation expansion.
inline double determinant(const std::vector<std::vector<double>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<int> perm(n);
    for (int i = 0; i < n; ++i) perm[i] = i;
    double det = 0.0;
    do {
        std::vector<int> copy = perm;
        double term = sort_sign(copy);
        for (int i = 0; i < n; ++i) term *= m[i][perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline flowcalc::GradedElement random_element(int dim, int grade, std::mt19937_64& gen,
                                              flowcalc::Space space = flowcalc::Space::vector) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> c(flowcalc::binomial(dim, grade));
    for (double& v : c) v = coef(gen);
    return flowcalc::GradedElement(dim, grade, c, space);
}

inline std::vector<double> random_vector(int dim, std::mt19937_64& gen) {
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::vector<double> v(dim);
    for (double& c : v) c = coef(gen);
    return v;
}

inline double max_abs_diff(const flowcalc::GradedElement& a, const flowcalc::GradedElement& b) {
    if (a.size() != b.size()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

// ---------------------------------------------------------------------------
// Expressions

struct Point {
    std::vector<double> x;
    double t = 0.0;
    std::vector<double> u;
};

/// Plain structural recursion with std:: math; throws std::domain_error.
inline double eval(const flowcalc::Expr& e, const Point& p) {
    using namespace flowcalc;
    const auto& v = e.node().value;
    if (const auto* n = std::get_if<NumberNode>(&v)) return n->value;
    if (const auto* n = std::get_if<VariableNode>(&v)) {
        switch (n->var.kind) {
        case VarKind::x: return p.x.at(n->var.index - 1);
        case VarKind::t: return p.t;
        case VarKind::u: return p.u.at(n->var.index - 1);
        }
    }
    if (const auto* n = std::get_if<ConstantNode>(&v)) {
        return n->constant == Constant::pi ? std::numbers::pi : std::numbers::e;
    }
    if (const auto* n = std::get_if<NegateNode>(&v)) return -eval(n->operand, p);
    if (const auto* n = std::get_if<BinaryNode>(&v)) {
        const double a = eval(n->lhs, p), b = eval(n->rhs, p);
        switch (n->op) {
        case BinaryOp::add: return a + b;
        case BinaryOp::sub: return a - b;
        case BinaryOp::mul: return a * b;
        case BinaryOp::div:
            if (b == 0.0) throw std::domain_error("division by zero");
            return a / b;
        case BinaryOp::pow:
            if (a < 0.0 && b != std::floor(b)) throw std::domain_error("negative base");
            if (a == 0.0 && b < 0.0) throw std::domain_error("zero to negative power");
            return std::pow(a, b);
        }
    }
    const auto& c = std::get<CallNode>(v);
    const double a = eval(c.argument, p);
    switch (c.fn) {
    case Function::sin: return std::sin(a);
    case Function::cos: return std::cos(a);
    case Function::exp: return std::exp(a);
    case Function::log:
        if (a <= 0.0) throw std::domain_error("log");
        return std::log(a);
    case Function::sqrt:
        if (a < 0.0) throw std::domain_error("sqrt");
        return std::sqrt(a);
    case Function::abs: return std::abs(a);
    }
    throw std::logic_error("unreachable");
}

/// Random tree over x1..x<dim> of at most the given depth.
inline flowcalc::Expr random_expr(int dim, int depth, std::mt19937_64& gen) {
    using namespace flowcalc;
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 2 : 9);
    std::uniform_real_distribution<double> lit(-3.0, 3.0);
    const int kind = pick(gen);
    switch (kind) {
    case 0: return Expr::number(std::round(lit(gen) * 100.0) / 100.0);
    case 1: return Expr::x(std::uniform_int_distribution<int>(1, dim)(gen));
    case 2: return Expr::constant(std::uniform_int_distribution<int>(0, 1)(gen) ? Constant::pi : Constant::e);
    case 3: return Expr::negate(random_expr(dim, depth - 1, gen));
    case 4: {
        const Function fns[] = {Function::sin, Function::cos, Function::abs};
        return Expr::call(fns[std::uniform_int_distribution<int>(0, 2)(gen)], random_expr(dim, depth - 1, gen));
    }
    case 5: return Expr::binary(BinaryOp::pow, random_expr(dim, depth - 1, gen),
                                Expr::number(std::uniform_int_distribution<int>(0, 3)(gen)));
    default: {
        const BinaryOp ops[] = {BinaryOp::add, BinaryOp::sub, BinaryOp::mul, BinaryOp::div};
        return Expr::binary(ops[kind - 6], random_expr(dim, depth - 1, gen), random_expr(dim, depth - 1, gen));
    }
    }
}

/// Expression text with a hand-written evaluation of the same formula.
struct CorpusEntry {
    const char* text;
    std::function<double(double, double, double)> value; // (x1, x2, x3)
};

inline const std::vector<CorpusEntry>& corpus() {
    using std::cos, std::exp, std::log, std::sin, std::sqrt, std::abs;
    constexpr double pi = std::numbers::pi, e = std::numbers::e;
    static const std::vector<CorpusEntry> entries = {
        {"2+3*x1", [](double a, double, double) { return 2 + 3 * a; }},
        {"x1-x2-x3", [](double a, double b, double c) { return a - b - c; }},
        {"x1-(x2-x3)", [](double a, double b, double c) { return a - (b - c); }},
        {"x1/x2/x3", [](double a, double b, double c) { return a / b / c; }},
        {"x1/(x2*x3)", [](double a, double b, double c) { return a / (b * c); }},
        {"2^3^2", [](double, double, double) { return 512.0; }},
        {"(2^3)^2", [](double, double, double) { return 64.0; }},
        {"-x1^2", [](double a, double, double) { return -(a * a); }},
        {"(-x1)^2", [](double a, double, double) { return a * a; }},
        {"x1^-2", [](double a, double, double) { return 1.0 / (a * a); }},
        {"-x1*-x2", [](double a, double b, double) { return a * b; }},
        {"--x1", [](double a, double, double) { return a; }},
        {"x1 - -x2", [](double a, double b, double) { return a + b; }},
        {"sin(x1)*cos(x2)", [=](double a, double b, double) { return sin(a) * cos(b); }},
        {"exp(-x1^2-x2^2)", [=](double a, double b, double) { return exp(-a * a - b * b); }},
        {"log(1+x1^2)", [=](double a, double, double) { return log(1 + a * a); }},
        {"sqrt(x1^2+x2^2+x3^2)", [=](double a, double b, double c) { return sqrt(a * a + b * b + c * c); }},
        {"abs(x1-x2)", [=](double a, double b, double) { return abs(a - b); }},
        {"pi*x1", [=](double a, double, double) { return pi * a; }},
        {"e^x1", [=](double a, double, double) { return exp(a); }},
        {"x^2-y^2", [](double a, double b, double) { return a * a - b * b; }},
        {"x*y*z", [](double a, double b, double c) { return a * b * c; }},
        {"x1^3-3*x1*x2^2", [](double a, double b, double) { return a * a * a - 3 * a * b * b; }},
        {"1.5e-3*x1+2.5E2", [](double a, double, double) { return 1.5e-3 * a + 2.5e2; }},
        {"(x1+x2)*(x1-x2)", [](double a, double b, double) { return (a + b) * (a - b); }},
        {"2*pi*sin(pi*x1)", [=](double a, double, double) { return 2 * pi * sin(pi * a); }},
        {"cos(sin(cos(x1)))", [=](double a, double, double) { return cos(sin(cos(a))); }},
        {"x1^0.5", [=](double a, double, double) { return sqrt(a); }},
        {"1/(1+exp(-x2))", [=](double, double b, double) { return 1 / (1 + exp(-b)); }},
        {"e*x3 - pi/x2 + 7", [=](double, double b, double c) { return e * c - pi / b + 7; }},
    };
    return entries;
}

} // namespace oracle
