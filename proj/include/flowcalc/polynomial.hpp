#pragma once

// Seeded randomness and random polynomial fields for the verification suites.
//
// Generator: std::mt19937_64 seeded with splitmix64(seed); per-trial streams
// use splitmix64(seed ^ splitmix64(trial + 1)). Uniform doubles take the top
// 53 bits of a draw, so sequences are identical on every conforming platform.

#include "flowcalc/expr.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace flowcalc {

std::uint64_t splitmix64(std::uint64_t x);

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

    /// Stream for trial `index` of a run seeded with `seed`.
    static Rng for_trial(std::uint64_t seed, std::uint64_t index) {
        return Rng(seed ^ splitmix64(index + 1));
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    /// Uniform integer in [lo, hi].
    int integer(int lo, int hi) {
        return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 engine_;
};

/// Polynomial in x1..xn with real coefficients, keyed by exponent vectors.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int dim) : dim_(dim) {}

    /// Every monomial of total degree <= `degree` with a coefficient uniform in [-1, 1].
    static Polynomial random(int dim, int degree, Rng& rng);

    int dim() const noexcept { return dim_; }
    const std::map<Exponents, double>& terms() const noexcept { return terms_; }
    void add_term(const Exponents& exponents, double coefficient);

    Polynomial derivative(int axis) const; // axis is 0-based
    double operator()(const std::vector<double>& x) const;
    Expr to_expr() const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(double s, const Polynomial& p);

private:
    int dim_;
    std::map<Exponents, double> terms_;
};

} // namespace flowcalc
