#include "flowcalc/field.hpp"

#include "flowcalc/error.hpp"
#include "flowcalc/input_files.hpp"

#include <charconv>
#include <map>

namespace flowcalc {

namespace {

void check_point(const FlowField& field, std::span<const double> x) {
    if (static_cast<int>(x.size()) != field.dim()) {
        throw DimensionError("point of dimension " + std::to_string(x.size()) + " for a flow in dimension " +
                             std::to_string(field.dim()));
    }
}

void check_step(double h) {
    if (!(h > 0.0)) throw InvalidArgument("difference step must be positive");
}

} // namespace

FlowField::FlowField(int dim, std::vector<Expr> components, std::optional<Expr> potential)
    : dim_(dim), components_(std::move(components)), potential_(std::move(potential)) {
    if (dim < 1) throw InvalidArgument("flow dimension must be at least 1");
    if (static_cast<int>(components_.size()) != dim) {
        throw DimensionError("flow in dimension " + std::to_string(dim) + " needs " + std::to_string(dim) +
                             " components, got " + std::to_string(components_.size()));
    }
    for (std::size_t i = 0; i < components_.size(); ++i) {
        const VariableUsage use = variable_usage(components_[i]);
        if (use.max_x > dim || use.uses_t || use.max_u > 0) {
            throw DimensionError("component a" + std::to_string(i + 1) + " references undeclared variables");
        }
        programs_.emplace_back(components_[i]);
    }
    if (potential_) {
        const VariableUsage use = variable_usage(*potential_);
        if (use.max_x > dim || use.uses_t || use.max_u > 0) {
            throw DimensionError("potential references variables other than x1..x" + std::to_string(dim));
        }
        potential_program_ = Program(*potential_);
    }
}

void FlowField::evaluate(std::span<const double> x, std::span<double> out) const {
    check_point(*this, x);
    if (out.size() != static_cast<std::size_t>(dim_)) throw DimensionError("output span has wrong length");
    int component = 0;
    try {
        if (is_gradient()) {
            std::vector<double> shifted(x.begin(), x.end());
            for (component = 0; component < dim_; ++component) {
                const double base = shifted[component];
                shifted[component] = base + gradient_step_;
                const double plus = potential_program_({shifted});
                shifted[component] = base - gradient_step_;
                const double minus = potential_program_({shifted});
                shifted[component] = base;
                out[component] = (plus - minus) / (2.0 * gradient_step_);
            }
        } else {
            for (component = 0; component < dim_; ++component) out[component] = programs_[component]({x});
        }
    } catch (const DomainError& e) {
        throw DomainError("component a" + std::to_string(component + 1) + ": " + e.what());
    }
}

std::vector<double> FlowField::operator()(std::span<const double> x) const {
    std::vector<double> out(static_cast<std::size_t>(dim_));
    evaluate(x, out);
    return out;
}

double FlowField::potential_at(std::span<const double> x) const {
    check_point(*this, x);
    if (!potential_) throw InvalidArgument("flow has no potential");
    try {
        return potential_program_({x});
    } catch (const DomainError& e) {
        throw DomainError(std::string("potential: ") + e.what());
    }
}

std::vector<double> eval_flow(const FlowField& field, std::span<const double> x) { return field(x); }

Matrix numeric_jacobian(const FlowField& field, std::span<const double> x, double h) {
    check_step(h);
    check_point(field, x);
    const int n = field.dim();
    Matrix jac(n, n);
    std::vector<double> shifted(x.begin(), x.end());
    std::vector<double> plus(n), minus(n);
    for (int j = 0; j < n; ++j) {
        shifted[j] = x[j] + h;
        field.evaluate(shifted, plus);
        shifted[j] = x[j] - h;
        field.evaluate(shifted, minus);
        shifted[j] = x[j];
        for (int i = 0; i < n; ++i) jac(i, j) = (plus[i] - minus[i]) / (2.0 * h);
    }
    return jac;
}

FlowField gradient_flow(const Expr& potential, int dim, double h) {
    check_step(h);
    if (dim < 1) throw InvalidArgument("flow dimension must be at least 1");
    const VariableUsage use = variable_usage(potential);
    if (use.max_x > dim || use.uses_t || use.max_u > 0) {
        throw DimensionError("potential references variables other than x1..x" + std::to_string(dim));
    }
    FlowField field;
    field.dim_ = dim;
    field.potential_ = potential;
    field.potential_program_ = Program(potential);
    field.gradient_step_ = h;
    return field;
}

FlowField parse_flow_spec(std::string_view text) {
    const std::vector<Statement> statements = split_statements(text);
    const Statement* dim_statement = nullptr;
    for (const Statement& s : statements) {
        if (s.key == "dim") {
            if (dim_statement) throw ParseError("duplicate 'dim'", s.line, s.key_column);
            dim_statement = &s;
        }
    }
    if (!dim_statement) throw ParseError("'dim' missing", 1, 1);
    int dim = 0;
    {
        const std::string& v = dim_statement->value;
        const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), dim);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            throw ParseError("'dim' must be an integer", dim_statement->line, dim_statement->value_column);
        }
        if (dim < 1) throw ParseError("'dim' must be at least 1", dim_statement->line, dim_statement->value_column);
    }

    const Scope scope{.dim = dim, .allow_x = true};
    std::map<int, Expr> components;
    std::optional<Expr> potential;
    int last_line = 1;
    for (const Statement& s : statements) {
        last_line = s.line;
        if (s.key == "dim") continue;
        if (s.has_args) throw ParseError("unexpected argument list after '" + s.key + "'", s.line, s.key_column);
        if (s.key == "phi") {
            if (potential) throw ParseError("duplicate 'phi'", s.line, s.key_column);
            potential = parse_expression(s.value, scope, s.line, s.value_column);
            continue;
        }
        int index = 0;
        if (s.key.size() > 1 && s.key.front() == 'a') {
            const auto [ptr, ec] = std::from_chars(s.key.data() + 1, s.key.data() + s.key.size(), index);
            if (ec != std::errc() || ptr != s.key.data() + s.key.size()) index = 0;
        }
        if (index < 1 || index > dim) throw ParseError("unknown key '" + s.key + "'", s.line, s.key_column);
        if (components.contains(index)) throw ParseError("duplicate '" + s.key + "'", s.line, s.key_column);
        components.emplace(index, parse_expression(s.value, scope, s.line, s.value_column));
    }
    if (components.empty() && potential) return gradient_flow(*potential, dim);
    std::vector<Expr> ordered;
    for (int i = 1; i <= dim; ++i) {
        auto it = components.find(i);
        if (it == components.end()) throw ParseError("component 'a" + std::to_string(i) + "' missing", last_line, 1);
        ordered.push_back(it->second);
    }
    return FlowField(dim, std::move(ordered), std::move(potential));
}

} // namespace flowcalc
