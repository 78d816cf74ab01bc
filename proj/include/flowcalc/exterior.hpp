#pragma once

// Euclidean exterior algebra over R^n with an orthonormal basis.
//
// A graded element of grade m stores C(n, m) coefficients, one per basis
// blade e_I, with the multi-indices I = (i_1 < ... < i_m) in lexicographic
// order. Orientation: e_1 ^ ... ^ e_n is positive and the Hodge dual maps
// e_I to sign(I, I^c) e_{I^c}, so that *e_{1..m} = +e_{m+1..n}.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowcalc {

inline constexpr int kMaxExteriorDim = 16;

/// Which space an element belongs to. With the positive Euclidean metric the
/// two are identified coefficient by coefficient.
enum class Space { vector, form };

/// Strictly increasing 1-based indices drawn from {1..dim}.
class MultiIndex {
public:
    MultiIndex(int dim, std::vector<int> indices);

    static MultiIndex from_mask(int dim, std::uint32_t mask);

    int dim() const noexcept { return dim_; }
    int grade() const noexcept { return static_cast<int>(indices_.size()); }
    const std::vector<int>& indices() const noexcept { return indices_; }
    std::uint32_t mask() const noexcept;

    /// e.g. "e13"; "1" for the empty index.
    std::string to_string() const;

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;

private:
    int dim_;
    std::vector<int> indices_;
};

std::size_t binomial(int n, int k);

/// All multi-indices of the given grade, lexicographically ordered.
std::vector<MultiIndex> basis(int dim, int grade);

/// Position of a multi-index inside basis(dim, grade).
std::size_t basis_position(const MultiIndex& index);

class GradedElement {
public:
    GradedElement(int dim, int grade, std::vector<double> coeffs, Space space = Space::vector);

    static GradedElement zero(int dim, int grade, Space space = Space::vector);
    static GradedElement blade(const MultiIndex& index, double coefficient = 1.0,
                               Space space = Space::vector);
    static GradedElement scalar(int dim, double value, Space space = Space::vector);
    /// Grade-1 element with the given components.
    static GradedElement vector(std::span<const double> components, Space space = Space::vector);
    /// e_1 ^ ... ^ e_n.
    static GradedElement volume(int dim, Space space = Space::vector);

    int dim() const noexcept { return dim_; }
    int grade() const noexcept { return grade_; }
    Space space() const noexcept { return space_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }
    std::size_t size() const noexcept { return coeffs_.size(); }
    double operator[](std::size_t i) const { return coeffs_[i]; }
    double coefficient(const MultiIndex& index) const;

    /// Identification operator between vectors and forms (coefficients unchanged).
    GradedElement as(Space space) const;

    bool is_zero() const noexcept;

    GradedElement& operator+=(const GradedElement& other);
    GradedElement& operator-=(const GradedElement& other);
    GradedElement& operator*=(double s);

    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(GradedElement a, double s) { return a *= s; }
    friend GradedElement operator*(double s, GradedElement a) { return a *= s; }
    friend GradedElement operator-(GradedElement a) { return a *= -1.0; }

    friend bool operator==(const GradedElement&, const GradedElement&) = default;

private:
    int dim_;
    int grade_;
    std::vector<double> coeffs_;
    Space space_;
};

/// Max-abs coefficient comparison; grades, dims and spaces must match.
bool approx_equal(const GradedElement& a, const GradedElement& b, double tol = 1e-12);

/// Throws DimensionError on mismatched dims or spaces and GradeOverflowError
/// when p + q > n.
GradedElement wedge(const GradedElement& u, const GradedElement& v);

/// Measure of action <u, v>: coefficient dot product on the orthonormal basis.
double scalar_product(const GradedElement& u, const GradedElement& v);

double norm(const GradedElement& u);

/// <u, v> / (|u| |v|). Throws InvalidArgument when either argument is zero.
double normalized_measure(const GradedElement& u, const GradedElement& v);

GradedElement hodge_dual(const GradedElement& u);

/// <f, w> for an m-form f and an m-vector w.
double pair_form_vector(const GradedElement& f, const GradedElement& w);

/// v_1 ^ ... ^ v_m; each vector must have the same length n, 1 <= m <= n.
GradedElement blade_from_vectors(std::span<const std::vector<double>> vectors);

/// Sign of the permutation that sorts the concatenation (I, J) of two disjoint
/// index sets, or 0 when they intersect.
int merge_sign(std::uint32_t left_mask, std::uint32_t right_mask);

/// Text such as "2*e12 - e13 + 0.5*e23" (vectors) or "dx1 + 3*dx2" (forms).
/// A bare number is a grade-0 term. Above dim 9 indices are joined by '_'
/// (e1_10). All terms must share one grade and one space.
GradedElement parse_element(std::string_view text, int dim);
std::string to_string(const GradedElement& u);

} // namespace flowcalc
