#include "flowcalc/diff_chars.hpp"

#include "flowcalc/error.hpp"

#include <cmath>
#include <sstream>

namespace flowcalc {

namespace {

void require_match(const FlowField& field, const Region& region) {
    if (field.dim() != region.dim()) {
        throw DimensionError("flow dimension " + std::to_string(field.dim()) + " does not match region dimension " +
                             std::to_string(region.dim()));
    }
}

std::string describe_node(const std::vector<double>& x) {
    std::ostringstream os;
    os.precision(6);
    os << "node (";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? ", " : "") << x[i];
    os << ")";
    return os.str();
}

// Calls fn(J) for the Jacobian at every node; evaluation errors carry the node.
template <class Fn>
void for_each_jacobian(const FlowField& field, const Region& region, double h, Fn&& fn) {
    require_match(field, region);
    for (std::size_t i = 0; i < region.node_count(); ++i) {
        const auto x = region.node(i);
        try {
            fn(numeric_jacobian(field, x, h));
        } catch (const DomainError& e) {
            throw DomainError(describe_node(x) + ": " + e.what());
        }
    }
}

} // namespace

double skew_residual(const FlowField& field, const Region& region, double h) {
    double worst = 0.0;
    const int n = field.dim();
    for_each_jacobian(field, region, h, [&](const Matrix& j) {
        for (int a = 0; a < n; ++a) {
            for (int b = a + 1; b < n; ++b) worst = std::max(worst, std::abs(j(a, b) - j(b, a)));
        }
    });
    return worst;
}

double divergence_residual(const FlowField& field, const Region& region, double h) {
    double worst = 0.0;
    const int n = field.dim();
    for_each_jacobian(field, region, h, [&](const Matrix& j) {
        double trace = 0.0;
        for (int a = 0; a < n; ++a) trace += j(a, a);
        worst = std::max(worst, std::abs(trace));
    });
    return worst;
}

PotentialReconstruction reconstruct_potential(const FlowField& field, const Region& region) {
    require_match(field, region);
    const int n = region.dim();
    const std::size_t count = region.node_count();
    std::vector<double> a(count * n);
    for (std::size_t i = 0; i < count; ++i) {
        const auto x = region.node(i);
        try {
            field.evaluate(x, std::span<double>(a.data() + i * n, n));
        } catch (const DomainError& e) {
            throw DomainError(describe_node(x) + ": " + e.what());
        }
    }

    std::vector<double> forward(count, 0.0), reverse(count, 0.0);
    auto step = [&](std::vector<double>& phi, std::size_t node, int axis, int index) {
        const std::size_t prev = node - region.stride(axis);
        const double dx = region.coordinate(axis, index) - region.coordinate(axis, index - 1);
        phi[node] = phi[prev] + 0.5 * (a[prev * n + axis] + a[node * n + axis]) * dx;
    };
    double discrepancy = 0.0;
    for (std::size_t node = 1; node < count; ++node) {
        const auto idx = region.multi_index(node);
        int last = n - 1;
        while (idx[last] == 0) --last;
        int first = 0;
        while (idx[first] == 0) ++first;
        step(forward, node, last, idx[last]);
        step(reverse, node, first, idx[first]);
        discrepancy = std::max(discrepancy, std::abs(forward[node] - reverse[node]));
    }
    return {ScalarGrid(region, std::move(forward)), discrepancy, region.lo()};
}

double laplacian_residual(const ScalarGrid& phi) {
    const Region& r = phi.region();
    const int n = r.dim();
    for (int a = 0; a < n; ++a) {
        if (r.count(a) < 3) throw InvalidArgument("laplacian residual needs at least 3 nodes per axis");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < r.node_count(); ++i) {
        if (r.on_boundary(i)) continue;
        double lap = 0.0;
        for (int a = 0; a < n; ++a) {
            const double h = r.spacing(a);
            lap += (phi[i + r.stride(a)] - 2.0 * phi[i] + phi[i - r.stride(a)]) / (h * h);
        }
        worst = std::max(worst, std::abs(lap));
    }
    return worst;
}

double laplacian_residual(const Expr& phi, const Region& region) {
    const Program program(phi);
    return laplacian_residual(ScalarGrid::sample(region, [&](std::span<const double> x) {
        return program({x});
    }));
}

CharacteristicReport classify_flow(const FlowField& field, const Region& region, const Tolerances& tol, double h) {
    CharacteristicReport report;
    report.tolerances = tol;
    report.skew = skew_residual(field, region, h);
    report.divergence = divergence_residual(field, region, h);
    const PotentialReconstruction potential = reconstruct_potential(field, region);
    report.path_independence = potential.path_independence;
    report.gauge_origin = potential.gauge_origin;
    report.harmonicity = laplacian_residual(potential.potential);

    report.skew_closed = report.skew <= tol.skew;
    report.direct_closed = report.divergence <= tol.divergence;
    report.laminar = report.skew_closed && report.path_independence <= tol.path_independence;
    report.harmonic = report.laminar && report.harmonicity <= tol.harmonicity;
    return report;
}

} // namespace flowcalc
