#include "flowcalc/polynomial.hpp"

#include "flowcalc/error.hpp"

#include <cmath>
#include <optional>

namespace flowcalc {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

Polynomial Polynomial::random(int dim, int degree, Rng& rng) {
    Polynomial p(dim);
    Exponents e(dim, 0);
    // Enumerate exponent vectors in lexicographic order, keeping total degree <= degree.
    while (true) {
        int total = 0;
        for (int v : e) total += v;
        if (total <= degree) p.add_term(e, rng.uniform(-1.0, 1.0));
        int k = dim - 1;
        while (k >= 0 && e[k] == degree) e[k--] = 0;
        if (k < 0) break;
        ++e[k];
    }
    return p;
}

void Polynomial::add_term(const Exponents& exponents, double coefficient) {
    if (static_cast<int>(exponents.size()) != dim_) throw DimensionError("monomial exponent count mismatch");
    if (coefficient == 0.0) return;
    const double c = (terms_[exponents] += coefficient);
    if (c == 0.0) terms_.erase(exponents);
}

Polynomial Polynomial::derivative(int axis) const {
    Polynomial d(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0) continue;
        Exponents lowered = e;
        --lowered[axis];
        d.add_term(lowered, c * e[axis]);
    }
    return d;
}

double Polynomial::operator()(const std::vector<double>& x) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double term = c;
        for (int i = 0; i < dim_; ++i) {
            for (int k = 0; k < e[i]; ++k) term *= x[i];
        }
        sum += term;
    }
    return sum;
}

Expr Polynomial::to_expr() const {
    if (terms_.empty()) return Expr::number(0.0);
    std::optional<Expr> sum;
    for (const auto& [e, c] : terms_) {
        Expr term = Expr::number(std::abs(c));
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0) continue;
            Expr factor = e[i] == 1 ? Expr::x(i + 1) : pow(Expr::x(i + 1), Expr::number(e[i]));
            term = term * factor;
        }
        if (!sum) {
            sum = c < 0 ? -term : term;
        } else {
            sum = c < 0 ? *sum - term : *sum + term;
        }
    }
    return *sum;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    if (a.dim() != b.dim()) throw DimensionError("polynomial dimension mismatch");
    Polynomial r = a;
    for (const auto& [e, c] : b.terms()) r.add_term(e, c);
    return r;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }

Polynomial operator*(double s, const Polynomial& p) {
    Polynomial r(p.dim());
    for (const auto& [e, c] : p.terms()) r.add_term(e, s * c);
    return r;
}

} // namespace flowcalc
