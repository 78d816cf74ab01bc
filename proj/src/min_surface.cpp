#include "flowcalc/min_surface.hpp"

#include "flowcalc/error.hpp"
#include "flowcalc/exterior.hpp"
#include "flowcalc/lattice.hpp"
#include "flowcalc/polynomial.hpp"
#include "flowcalc/variational.hpp"

#include <algorithm>
#include <cmath>

namespace flowcalc {

namespace {

void check_ambient(int dim) {
    if (dim != 3 && dim != 4) throw DimensionError("surfaces are supported in ambient dimension 3 or 4");
}

double length(const std::vector<double>& v) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

// One Jacobi sweep of the zero-boundary Laplace smoother.
std::vector<double> jacobi_smooth(const SurfaceGrid& shape, const std::vector<double>& field) {
    const int m = shape.cells();
    std::vector<double> out(field.size(), 0.0);
    for (int k = 1; k < m; ++k) {
        for (int i = 1; i < m; ++i) {
            out[shape.node(i, k)] = 0.25 * (field[shape.node(i - 1, k)] + field[shape.node(i + 1, k)] +
                                            field[shape.node(i, k - 1)] + field[shape.node(i, k + 1)]);
        }
    }
    return out;
}

std::vector<double> random_interior(const SurfaceGrid& shape, Rng& rng) {
    const int m = shape.cells();
    std::vector<double> field(static_cast<std::size_t>(m + 1) * (m + 1), 0.0);
    for (int k = 1; k < m; ++k) {
        for (int i = 1; i < m; ++i) field[shape.node(i, k)] = rng.uniform(-1.0, 1.0);
    }
    return field;
}

// Unit normal at a node from central-difference tangents; zero if degenerate.
std::vector<double> node_normal(const SurfaceGrid& s, int i, int k) {
    const int n = s.ambient_dim();
    std::vector<double> tu(n), tv(n);
    for (int j = 0; j < n; ++j) {
        tu[j] = s.at(j, i + 1, k) - s.at(j, i - 1, k);
        tv[j] = s.at(j, i, k + 1) - s.at(j, i, k - 1);
    }
    if (n == 3) {
        const std::vector<std::vector<double>> tangents{tu, tv};
        const GradedElement dual = hodge_dual(blade_from_vectors(tangents));
        std::vector<double> normal(dual.coeffs().begin(), dual.coeffs().end());
        const double len = length(normal);
        if (len == 0.0) return std::vector<double>(n, 0.0);
        for (double& c : normal) c /= len;
        return normal;
    }
    // Gram-Schmidt the standard basis against the tangent plane; first survivor.
    std::vector<std::vector<double>> frame;
    for (auto t : {tu, tv}) {
        for (const auto& f : frame) {
            double d = 0.0;
            for (int j = 0; j < n; ++j) d += t[j] * f[j];
            for (int j = 0; j < n; ++j) t[j] -= d * f[j];
        }
        const double len = length(t);
        if (len < 1e-14) return std::vector<double>(n, 0.0);
        for (double& c : t) c /= len;
        frame.push_back(t);
    }
    for (int axis = 0; axis < n; ++axis) {
        std::vector<double> e(n, 0.0);
        e[axis] = 1.0;
        for (const auto& f : frame) {
            const double d = f[axis];
            for (int j = 0; j < n; ++j) e[j] -= d * f[j];
        }
        const double len = length(e);
        if (len > 0.5) {
            for (double& c : e) c /= len;
            return e;
        }
    }
    return std::vector<double>(n, 0.0);
}

void relax_sweep(SurfaceGrid& s, double omega) {
    const int m = s.cells();
    for (int j = 0; j < s.ambient_dim(); ++j) {
        for (int k = 1; k < m; ++k) {
            for (int i = 1; i < m; ++i) {
                const double avg = 0.25 * (s.at(j, i - 1, k) + s.at(j, i + 1, k) + s.at(j, i, k - 1) + s.at(j, i, k + 1));
                s.at(j, i, k) += omega * (avg - s.at(j, i, k));
            }
        }
    }
}

SweepRecord record(const SurfaceGrid& s, int sweep, double residual) {
    return {sweep, surface_area(s), vector_dirichlet_energy(s), residual};
}

} // namespace

// --- BoundaryLoop -----------------------------------------------------------

BoundaryLoop::BoundaryLoop(CurvePath curve, ArcSplit split) : curve_(std::move(curve)), split_(split) {
    check_ambient(curve_.dim());
    if (!curve_.closed()) throw InvalidArgument("boundary loop must be a closed curve");
    const auto& s = split_.starts;
    if (!(s[0] >= 0.0 && s[0] < 1.0 && s[0] < s[1] && s[1] < s[2] && s[2] < s[3] && s[3] < s[0] + 1.0)) {
        throw InvalidArgument("arc starts must increase within one period");
    }
}

std::vector<double> BoundaryLoop::arc_point(int side, double s) const {
    if (side < 0 || side > 3) throw InvalidArgument("arc index must be 0..3");
    const double start = split_.starts[side];
    const double end = side == 3 ? split_.starts[0] + 1.0 : split_.starts[side + 1];
    double t = s == 1.0 ? end : start + s * (end - start);
    if (t > 1.0) t -= 1.0;
    return curve_.point(t);
}

// --- SurfaceGrid ------------------------------------------------------------

SurfaceGrid::SurfaceGrid(int ambient_dim, int cells)
    : cells_(cells),
      coords_(static_cast<std::size_t>(ambient_dim), std::vector<double>(static_cast<std::size_t>(cells + 1) * (cells + 1), 0.0)) {
    if (ambient_dim < 3) throw DimensionError("surface grids need ambient dimension >= 3");
    if (cells < 1) throw InvalidArgument("surface grid needs at least one cell");
}

std::vector<double> SurfaceGrid::point(int i, int k) const {
    std::vector<double> p(coords_.size());
    for (std::size_t j = 0; j < coords_.size(); ++j) p[j] = coords_[j][node(i, k)];
    return p;
}

SurfaceGrid sample_surface(const SurfacePatch& patch, int cells) {
    if (patch.parameters() != 2) throw DimensionError("surface grids need a two-parameter patch");
    SurfaceGrid s(patch.dim(), cells);
    for (int k = 0; k <= cells; ++k) {
        for (int i = 0; i <= cells; ++i) {
            const double u[2] = {static_cast<double>(i) / cells, static_cast<double>(k) / cells};
            const auto p = patch.point(u);
            for (int j = 0; j < patch.dim(); ++j) s.at(j, i, k) = p[j];
        }
    }
    return s;
}

SurfaceGrid boundary_grid(const BoundaryLoop& loop, int cells) {
    if (cells < 3) throw InvalidArgument("surface relaxation needs M >= 3");
    SurfaceGrid s(loop.dim(), cells);
    const int m = cells;
    auto put = [&](int i, int k, const std::vector<double>& p) {
        for (int j = 0; j < loop.dim(); ++j) s.at(j, i, k) = p[j];
    };
    for (int q = 0; q <= m; ++q) {
        const double f = static_cast<double>(q) / m;
        put(q, 0, loop.arc_point(0, f));
        put(m, q, loop.arc_point(1, f));
        put(m - q, m, loop.arc_point(2, f));
        put(0, m - q, loop.arc_point(3, f));
    }
    for (int j = 0; j < loop.dim(); ++j) {
        double sum = 0.0;
        int count = 0;
        for (int k = 0; k <= m; ++k) {
            for (int i = 0; i <= m; ++i) {
                if (!s.is_boundary(i, k)) continue;
                sum += s.at(j, i, k);
                ++count;
            }
        }
        const double mean = sum / count;
        for (int k = 1; k < m; ++k) {
            for (int i = 1; i < m; ++i) s.at(j, i, k) = mean;
        }
    }
    return s;
}

RelaxResult relax_harmonic_surface(const BoundaryLoop& loop, const RelaxOptions& options) {
    return relax_harmonic_surface(boundary_grid(loop, options.cells), options);
}

RelaxResult relax_harmonic_surface(SurfaceGrid initial, const RelaxOptions& o) {
    check_ambient(initial.ambient_dim());
    if (initial.cells() < 3) throw InvalidArgument("surface relaxation needs M >= 3");
    if (!(o.tolerance > 0.0)) throw InvalidArgument("tolerance must be positive");
    if (!(o.omega > 0.0 && o.omega < 2.0)) throw InvalidArgument("relaxation factor must lie in (0, 2)");
    RelaxResult out{std::move(initial)};
    out.residual = surface_laplace_residual(out.surface);
    if (o.record_history) out.history.push_back(record(out.surface, 0, out.residual));
    while (out.residual > o.tolerance) {
        if (out.sweeps == o.max_sweeps) {
            throw NonConvergenceError("surface relaxation did not converge in " + std::to_string(o.max_sweeps) + " sweeps",
                                      out.residual);
        }
        relax_sweep(out.surface, o.omega);
        ++out.sweeps;
        out.residual = surface_laplace_residual(out.surface);
        if (o.record_history) out.history.push_back(record(out.surface, out.sweeps, out.residual));
    }
    return out;
}

double surface_area(const SurfaceGrid& s) {
    const int m = s.cells();
    const int n = s.ambient_dim();
    const double du = 1.0 / m;
    std::vector<std::vector<double>> tangents(2, std::vector<double>(n));
    double area = 0.0;
    for (int k = 0; k < m; ++k) {
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) {
                const double a = s.at(j, i, k), b = s.at(j, i + 1, k), c = s.at(j, i, k + 1), d = s.at(j, i + 1, k + 1);
                tangents[0][j] = (b + d - a - c) / (2.0 * du);
                tangents[1][j] = (c + d - a - b) / (2.0 * du);
            }
            area += norm(blade_from_vectors(tangents)) * du * du;
        }
    }
    return area;
}

double vector_dirichlet_energy(const SurfaceGrid& s) {
    const Region square = Region::cube(2, 0.0, 1.0, s.nodes_per_side());
    double energy = 0.0;
    for (int j = 0; j < s.ambient_dim(); ++j) energy += dirichlet_energy(ScalarGrid(square, s.coordinate(j)));
    return energy;
}

double surface_laplace_residual(const SurfaceGrid& s) {
    const int m = s.cells();
    const double inv_h2 = static_cast<double>(m) * m;
    double worst = 0.0;
    for (int j = 0; j < s.ambient_dim(); ++j) {
        for (int k = 1; k < m; ++k) {
            for (int i = 1; i < m; ++i) {
                const double lap = (s.at(j, i - 1, k) + s.at(j, i + 1, k) + s.at(j, i, k - 1) + s.at(j, i, k + 1) -
                                    4.0 * s.at(j, i, k)) * inv_h2;
                worst = std::max(worst, std::abs(lap));
            }
        }
    }
    return worst;
}

AreaProbeStats area_variation_probe(const SurfaceGrid& surface, double magnitude, int trials, std::uint64_t seed) {
    if (!(magnitude > 0.0)) throw InvalidArgument("perturbation magnitude must be positive");
    if (trials < 1) throw InvalidArgument("need at least one trial");
    const int n = surface.ambient_dim();
    const int m = surface.cells();
    const double base_area = surface_area(surface);
    const double base_energy = vector_dirichlet_energy(surface);
    AreaProbeStats stats;
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(trial));

        std::vector<std::vector<double>> noise;
        double peak = 0.0;
        for (int j = 0; j < n; ++j) {
            noise.push_back(jacobi_smooth(surface, random_interior(surface, rng)));
            for (double v : noise.back()) peak = std::max(peak, std::abs(v));
        }
        SurfaceGrid moved = surface;
        for (int j = 0; j < n; ++j) {
            for (int k = 1; k < m; ++k) {
                for (int i = 1; i < m; ++i) moved.at(j, i, k) += magnitude / peak * noise[j][surface.node(i, k)];
            }
        }
        stats.coordinate_area_delta.push_back(surface_area(moved) - base_area);
        stats.energy_delta.push_back(vector_dirichlet_energy(moved) - base_energy);

        const std::vector<double> scalar = jacobi_smooth(surface, random_interior(surface, rng));
        double scalar_peak = 0.0;
        for (double v : scalar) scalar_peak = std::max(scalar_peak, std::abs(v));
        SurfaceGrid pushed = surface;
        for (int k = 1; k < m; ++k) {
            for (int i = 1; i < m; ++i) {
                const auto normal = node_normal(surface, i, k);
                const double amount = magnitude / scalar_peak * scalar[surface.node(i, k)];
                for (int j = 0; j < n; ++j) pushed.at(j, i, k) += amount * normal[j];
            }
        }
        stats.normal_area_delta.push_back(surface_area(pushed) - base_area);
    }
    return stats;
}

} // namespace flowcalc
