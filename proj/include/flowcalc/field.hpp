#pragma once

#include "flowcalc/expr.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace flowcalc {

/// Default central-difference step for unit-scale domains.
inline constexpr double kDefaultStep = 1e-4;

/// Dense row-major matrix, just enough for Jacobians.
class Matrix {
public:
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

private:
    int rows_;
    int cols_;
    std::vector<double> data_;
};

/// A flow: n covector components a_i(x) over R^n.
///
/// Either explicit component expressions, or the central-difference gradient
/// of a potential (see gradient_flow). Immutable after construction.
class FlowField {
public:
    FlowField(int dim, std::vector<Expr> components, std::optional<Expr> potential = std::nullopt);

    int dim() const noexcept { return dim_; }
    bool is_gradient() const noexcept { return gradient_step_ > 0.0; }
    double gradient_step() const noexcept { return gradient_step_; }
    const std::vector<Expr>& components() const noexcept { return components_; }
    const std::optional<Expr>& potential() const noexcept { return potential_; }

    /// Writes a(x) into out. DomainError messages name the failing component.
    void evaluate(std::span<const double> x, std::span<double> out) const;
    std::vector<double> operator()(std::span<const double> x) const;

    double potential_at(std::span<const double> x) const;

    friend FlowField gradient_flow(const Expr& potential, int dim, double h);

private:
    FlowField() = default;

    int dim_ = 0;
    std::vector<Expr> components_;
    std::vector<Program> programs_;
    std::optional<Expr> potential_;
    Program potential_program_;
    double gradient_step_ = 0.0;
};

/// Parses the line-oriented flow format (`dim = n`, `a1 = ...`, optional
/// `phi = ...`; `;` also separates statements, `#` starts a comment). A file
/// with `phi` and no components describes gradient_flow(phi).
FlowField parse_flow_spec(std::string_view text);

std::vector<double> eval_flow(const FlowField& field, std::span<const double> x);

/// J(i, j) = d a_i / d x_j by central differences with step h.
Matrix numeric_jacobian(const FlowField& field, std::span<const double> x, double h = kDefaultStep);

/// Field whose components are central-difference derivatives of the potential.
FlowField gradient_flow(const Expr& potential, int dim, double h = kDefaultStep);

} // namespace flowcalc
