#include "flowcalc/variational.hpp"

#include "flowcalc/diff_chars.hpp"
#include "flowcalc/error.hpp"
#include "flowcalc/integral.hpp"

#include <algorithm>
#include <cmath>

namespace flowcalc {

namespace {

FlowField field_from_polynomials(const std::vector<Polynomial>& components) {
    std::vector<Expr> exprs;
    for (const Polynomial& p : components) exprs.push_back(p.to_expr());
    return FlowField(static_cast<int>(components.size()), std::move(exprs));
}

Polynomial monomial(int dim, std::vector<int> exponents, double c = 1.0) {
    Polynomial p(dim);
    p.add_term(exponents, c);
    return p;
}

// Harmonic polynomials of degree <= 3.
std::vector<Polynomial> harmonic_basis(int dim) {
    std::vector<Polynomial> basis;
    if (dim == 2) {
        basis.push_back(monomial(2, {1, 0}));
        basis.push_back(monomial(2, {0, 1}));
        basis.push_back(monomial(2, {2, 0}) - monomial(2, {0, 2}));
        basis.push_back(monomial(2, {1, 1}));
        basis.push_back(monomial(2, {3, 0}) - monomial(2, {1, 2}, 3.0));
        basis.push_back(monomial(2, {2, 1}, 3.0) - monomial(2, {0, 3}));
        return basis;
    }
    basis.push_back(monomial(3, {1, 0, 0}));
    basis.push_back(monomial(3, {0, 1, 0}));
    basis.push_back(monomial(3, {0, 0, 1}));
    basis.push_back(monomial(3, {1, 1, 0}));
    basis.push_back(monomial(3, {0, 1, 1}));
    basis.push_back(monomial(3, {1, 0, 1}));
    basis.push_back(monomial(3, {2, 0, 0}) - monomial(3, {0, 2, 0}));
    basis.push_back(monomial(3, {0, 2, 0}) - monomial(3, {0, 0, 2}));
    basis.push_back(monomial(3, {1, 1, 1}));
    basis.push_back(monomial(3, {3, 0, 0}) - monomial(3, {1, 2, 0}, 3.0));
    basis.push_back(monomial(3, {0, 3, 0}) - monomial(3, {0, 1, 2}, 3.0));
    basis.push_back(monomial(3, {0, 0, 3}) - monomial(3, {2, 0, 1}, 3.0));
    basis.push_back(monomial(3, {2, 1, 0}, 3.0) - monomial(3, {0, 3, 0}));
    return basis;
}

Polyline random_loop(int dim, Rng& rng, int segments_per_edge) {
    Polyline loop;
    loop.segments_per_edge = segments_per_edge;
    const int vertices = rng.integer(3, 6);
    for (int v = 0; v < vertices; ++v) {
        std::vector<double> p(dim);
        for (double& c : p) c = rng.uniform();
        loop.vertices.push_back(std::move(p));
    }
    return loop;
}

BoxInstrument random_box(int dim, Rng& rng, int cells) {
    std::vector<double> center(dim), edges(dim);
    for (int a = 0; a < dim; ++a) {
        edges[a] = rng.uniform(0.1, 0.5);
        center[a] = rng.uniform(0.0, 1.0 - edges[a]) + 0.5 * edges[a];
    }
    return BoxInstrument(std::move(center), std::move(edges), cells);
}

VerdictTable make_table(const char* suite, const SuiteOptions& o) {
    if (o.trials < 1) throw InvalidArgument("suite needs at least one trial");
    VerdictTable table;
    table.suite = suite;
    table.seed = o.seed;
    table.tolerance = o.tolerance;
    table.escape = o.escape();
    return table;
}

void check_interior_dims(const Region& r) {
    if (r.dim() != 2 && r.dim() != 3) throw DimensionError("Dirichlet problems are supported in 2 or 3 dimensions");
}

// Walks every node of the region, passing the multi-index (axis 0 fastest).
template <class Fn>
void for_each_node(const Region& r, Fn&& fn) {
    const int n = r.dim();
    std::vector<int> idx(n, 0);
    for (std::size_t i = 0; i < r.node_count(); ++i) {
        fn(i, idx);
        int a = 0;
        while (a < n && ++idx[a] == r.count(a)) idx[a++] = 0;
    }
}

double cell_volume(const Region& r) {
    double v = 1.0;
    for (int a = 0; a < r.dim(); ++a) v *= r.spacing(a);
    return v;
}

// Outward flux of the discrete gradient through the boundary of the node box
// [count/4, 3(count-1)/4] along every axis.
double interior_box_flux(const ScalarGrid& phi) {
    const Region& r = phi.region();
    const int n = r.dim();
    std::vector<int> lo(n), hi(n);
    for (int a = 0; a < n; ++a) {
        lo[a] = r.count(a) / 4;
        hi[a] = 3 * (r.count(a) - 1) / 4;
        if (lo[a] < 1 || hi[a] <= lo[a] || hi[a] >= r.count(a) - 1) return 0.0;
    }
    const double volume = cell_volume(r);
    double flux = 0.0;
    for_each_node(r, [&](std::size_t i, const std::vector<int>& idx) {
        for (int a = 0; a < n; ++a) {
            if (idx[a] < lo[a] || idx[a] > hi[a]) return;
        }
        for (int a = 0; a < n; ++a) {
            const double face = volume / r.spacing(a);
            const double h = r.spacing(a);
            if (idx[a] == hi[a]) flux += (phi[i + r.stride(a)] - phi[i]) / h * face;
            if (idx[a] == lo[a]) flux += (phi[i - r.stride(a)] - phi[i]) / h * face;
        }
    });
    return flux;
}

// Integral of |grad phi| with the gradient averaged over each cell's edges.
double gradient_norm_integral(const ScalarGrid& phi) {
    const Region& r = phi.region();
    const int n = r.dim();
    const double volume = cell_volume(r);
    const int corners = 1 << n;
    double total = 0.0;
    for_each_node(r, [&](std::size_t i, const std::vector<int>& idx) {
        for (int a = 0; a < n; ++a) {
            if (idx[a] == r.count(a) - 1) return;
        }
        double sq = 0.0;
        for (int a = 0; a < n; ++a) {
            double g = 0.0;
            for (int c = 0; c < corners; ++c) {
                if (c & (1 << a)) continue;
                std::size_t base = i;
                for (int b = 0; b < n; ++b) {
                    if (c & (1 << b)) base += r.stride(b);
                }
                g += phi[base + r.stride(a)] - phi[base];
            }
            g /= (corners / 2) * r.spacing(a);
            sq += g * g;
        }
        total += std::sqrt(sq) * volume;
    });
    return total;
}

} // namespace

int VerdictTable::agreements() const {
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [](const VerdictRow& r) { return r.agree; }));
}

bool residuals_agree(double lhs, double rhs, double tol, double escape) {
    return (lhs <= tol && rhs <= tol) || (lhs >= escape && rhs >= escape);
}

VerdictRow stokes_row(const FlowField& field, Rng& rng, const SuiteOptions& o) {
    VerdictRow row;
    row.dim = field.dim();
    for (int k = 0; k < o.probes; ++k) {
        const Polyline loop = random_loop(field.dim(), rng, o.segments_per_edge);
        row.integral_residual = std::max(row.integral_residual, std::abs(circulation(field, loop)));
    }
    row.differential_residual = skew_residual(field, Region::cube(field.dim(), 0.0, 1.0, o.grid), o.h);
    row.agree = residuals_agree(row.integral_residual, row.differential_residual, o.tolerance, o.escape());
    return row;
}

VerdictRow gauss_row(const FlowField& field, Rng& rng, const SuiteOptions& o) {
    VerdictRow row;
    row.dim = field.dim();
    for (int k = 0; k < o.probes; ++k) {
        const BoxInstrument box = random_box(field.dim(), rng, o.box_cells);
        row.integral_residual = std::max(row.integral_residual, std::abs(integral_measure(field, box)));
    }
    row.differential_residual = divergence_residual(field, Region::cube(field.dim(), 0.0, 1.0, o.grid), o.h);
    row.agree = residuals_agree(row.integral_residual, row.differential_residual, o.tolerance, o.escape());
    return row;
}

VerdictTable verify_stokes_link(const SuiteOptions& o) {
    VerdictTable table = make_table("stokes", o);
    for (int t = 0; t < o.trials; ++t) {
        Rng rng = Rng::for_trial(o.seed, static_cast<std::uint64_t>(t));
        const int dim = rng.integer(2, 3);
        std::vector<Polynomial> components;
        std::string id;
        if (t % 2 == 0) {
            const Polynomial potential = Polynomial::random(dim, 3, rng);
            for (int a = 0; a < dim; ++a) components.push_back(potential.derivative(a));
            id = "gradient";
        } else {
            for (int a = 0; a < dim; ++a) components.push_back(Polynomial::random(dim, 3, rng));
            id = "generic";
        }
        VerdictRow row = stokes_row(field_from_polynomials(components), rng, o);
        row.trial = t;
        row.field = id;
        table.rows.push_back(std::move(row));
    }
    return table;
}

VerdictTable verify_gauss_link(const SuiteOptions& o) {
    VerdictTable table = make_table("gauss", o);
    for (int t = 0; t < o.trials; ++t) {
        Rng rng = Rng::for_trial(o.seed, static_cast<std::uint64_t>(t));
        const int dim = rng.integer(2, 3);
        std::vector<Polynomial> components;
        std::string id;
        if (t % 2 == 0) {
            if (dim == 2) {
                const Polynomial stream = Polynomial::random(2, 3, rng);
                components = {stream.derivative(1), -1.0 * stream.derivative(0)};
                id = "stream";
            } else {
                std::vector<Polynomial> a;
                for (int k = 0; k < 3; ++k) a.push_back(Polynomial::random(3, 3, rng));
                components = {a[2].derivative(1) - a[1].derivative(2), a[0].derivative(2) - a[2].derivative(0),
                              a[1].derivative(0) - a[0].derivative(1)};
                id = "curl";
            }
        } else {
            for (int a = 0; a < dim; ++a) components.push_back(Polynomial::random(dim, 3, rng));
            id = "generic";
        }
        VerdictRow row = gauss_row(field_from_polynomials(components), rng, o);
        row.trial = t;
        row.field = id;
        table.rows.push_back(std::move(row));
    }
    return table;
}

VerdictTable verify_harmonic_link(const SuiteOptions& o) {
    VerdictTable table = make_table("harmonic", o);
    for (int t = 0; t < o.trials; ++t) {
        Rng rng = Rng::for_trial(o.seed, static_cast<std::uint64_t>(t));
        const int dim = rng.integer(2, 3);
        Polynomial phi(dim);
        std::string id;
        if (t % 2 == 0) {
            for (const Polynomial& b : harmonic_basis(dim)) phi = phi + rng.uniform(-1.0, 1.0) * b;
            id = "harmonic";
        } else {
            phi = Polynomial::random(dim, 3, rng);
            id = "generic";
        }
        const Region region = Region::cube(dim, 0.0, 1.0, dim == 2 ? 17 : 9);
        const ScalarGrid sampled = ScalarGrid::sample(region, [&](std::span<const double> x) {
            return phi(std::vector<double>(x.begin(), x.end()));
        });
        DirichletProblem problem{sampled};
        problem.tolerance = 1e-10;
        const LaplaceSolution solved = solve_laplace_dirichlet(problem);
        VerdictRow row;
        row.trial = t;
        row.field = id;
        row.dim = dim;
        row.integral_residual = std::sqrt(std::max(0.0, dirichlet_energy(sampled) - dirichlet_energy(solved.phi)));
        row.differential_residual = laplacian_residual(sampled);
        row.agree = residuals_agree(row.integral_residual, row.differential_residual, o.tolerance, o.escape());
        table.rows.push_back(std::move(row));
    }
    return table;
}

DirichletProblem DirichletProblem::from_function(const Region& region,
                                                 const std::function<double(std::span<const double>)>& g) {
    ScalarGrid boundary(region);
    for (std::size_t i = 0; i < region.node_count(); ++i) {
        if (region.on_boundary(i)) boundary[i] = g(region.node(i));
    }
    return DirichletProblem{std::move(boundary)};
}

double laplace_residual(const ScalarGrid& phi) {
    const Region& r = phi.region();
    double worst = 0.0;
    std::vector<double> inv_h2(r.dim());
    for (int a = 0; a < r.dim(); ++a) inv_h2[a] = 1.0 / (r.spacing(a) * r.spacing(a));
    for (std::size_t i = 0; i < r.node_count(); ++i) {
        if (r.on_boundary(i)) continue;
        double lap = 0.0;
        for (int a = 0; a < r.dim(); ++a) {
            lap += (phi[i + r.stride(a)] - 2.0 * phi[i] + phi[i - r.stride(a)]) * inv_h2[a];
        }
        worst = std::max(worst, std::abs(lap));
    }
    return worst;
}

LaplaceSolution solve_laplace_dirichlet(const DirichletProblem& p) {
    const Region& r = p.boundary.region();
    check_interior_dims(r);
    if (!(p.tolerance > 0.0)) throw InvalidArgument("solver tolerance must be positive");
    if (!(p.omega > 0.0 && p.omega < 2.0)) throw InvalidArgument("relaxation factor must lie in (0, 2)");
    if (p.max_sweeps < 1) throw InvalidArgument("max sweeps must be positive");

    LaplaceSolution out{p.boundary};
    ScalarGrid& phi = out.phi;
    std::vector<std::size_t> interior;
    double boundary_sum = 0.0;
    std::size_t boundary_count = 0;
    for (std::size_t i = 0; i < r.node_count(); ++i) {
        if (r.on_boundary(i)) {
            if (!std::isfinite(phi[i])) throw InvalidArgument("boundary values must be finite");
            boundary_sum += phi[i];
            ++boundary_count;
        } else {
            interior.push_back(i);
        }
    }
    const double mean = boundary_sum / static_cast<double>(boundary_count);
    for (std::size_t i : interior) phi[i] = mean;

    const int n = r.dim();
    std::vector<double> inv_h2(n);
    double diagonal = 0.0;
    for (int a = 0; a < n; ++a) {
        inv_h2[a] = 1.0 / (r.spacing(a) * r.spacing(a));
        diagonal += 2.0 * inv_h2[a];
    }

    out.residual = laplace_residual(phi);
    out.residual_history.push_back(out.residual);
    while (out.residual > p.tolerance) {
        if (out.sweeps == p.max_sweeps) {
            throw NonConvergenceError("Laplace relaxation did not converge in " + std::to_string(p.max_sweeps) +
                                          " sweeps",
                                      out.residual);
        }
        for (std::size_t i : interior) {
            double sum = 0.0;
            for (int a = 0; a < n; ++a) sum += (phi[i + r.stride(a)] + phi[i - r.stride(a)]) * inv_h2[a];
            phi[i] += p.omega * (sum / diagonal - phi[i]);
        }
        ++out.sweeps;
        out.residual = laplace_residual(phi);
        out.residual_history.push_back(out.residual);
    }
    return out;
}

double dirichlet_energy(const ScalarGrid& phi) {
    const Region& r = phi.region();
    const int n = r.dim();
    const double volume = cell_volume(r);
    double energy = 0.0;
    for_each_node(r, [&](std::size_t i, const std::vector<int>& idx) {
        for (int a = 0; a < n; ++a) {
            if (idx[a] == r.count(a) - 1) continue;
            double weight = volume;
            for (int b = 0; b < n; ++b) {
                if (b != a && (idx[b] == 0 || idx[b] == r.count(b) - 1)) weight *= 0.5;
            }
            const double slope = (phi[i + r.stride(a)] - phi[i]) / r.spacing(a);
            energy += weight * slope * slope;
        }
    });
    return energy;
}

StationarityStats stationarity_probe(const ScalarGrid& phi, int perturbations, double magnitude, std::uint64_t seed) {
    if (perturbations < 1) throw InvalidArgument("need at least one perturbation");
    if (!(magnitude > 0.0)) throw InvalidArgument("perturbation magnitude must be positive");
    const Region& r = phi.region();
    const double base_energy = dirichlet_energy(phi);
    const double base_flux = interior_box_flux(phi);
    const double base_gradient = gradient_norm_integral(phi);
    StationarityStats stats;
    for (int k = 0; k < perturbations; ++k) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(k));
        ScalarGrid moved = phi;
        for (std::size_t i = 0; i < r.node_count(); ++i) {
            if (!r.on_boundary(i)) moved[i] += rng.uniform(-magnitude, magnitude);
        }
        const double de = dirichlet_energy(moved) - base_energy;
        stats.energy_delta.push_back(de);
        stats.flux_delta.push_back(interior_box_flux(moved) - base_flux);
        stats.gradient_norm_delta.push_back(gradient_norm_integral(moved) - base_gradient);
        if (de > 0.0) ++stats.positive;
    }
    stats.min_energy_delta = *std::min_element(stats.energy_delta.begin(), stats.energy_delta.end());
    stats.max_energy_delta = *std::max_element(stats.energy_delta.begin(), stats.energy_delta.end());
    return stats;
}

} // namespace flowcalc
