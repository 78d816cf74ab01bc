#pragma once

// Surfaces spanned by a closed boundary loop whose coordinate functions are
// discrete harmonic on a square parameter grid, with area measured through
// tangent blades.
//
// Only two-parameter surfaces in ambient dimension 3 or 4 are supported. The
// parameter square is traversed counterclockwise from (0, 0): bottom edge,
// right edge, top edge, left edge, each mapped onto one arc of the loop.

#include "flowcalc/integral.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace flowcalc {

/// Loop parameters where the bottom, right, top and left arcs begin. Arc k
/// runs from starts[k] to starts[k + 1] (the last wraps to starts[0] + 1).
struct ArcSplit {
    std::array<double, 4> starts{0.0, 0.25, 0.5, 0.75};
};

class BoundaryLoop {
public:
    explicit BoundaryLoop(CurvePath curve, ArcSplit split = {});

    const CurvePath& curve() const noexcept { return curve_; }
    const ArcSplit& split() const noexcept { return split_; }
    int dim() const noexcept { return curve_.dim(); }

    /// Loop point for arc `side` (0..3) at fraction s in [0, 1] along it.
    std::vector<double> arc_point(int side, double s) const;

private:
    CurvePath curve_;
    ArcSplit split_;
};

/// Coordinates omega_j at the (M+1) x (M+1) nodes of the unit parameter
/// square, node (i, k) at u = i/M, v = k/M, stored with i fastest.
class SurfaceGrid {
public:
    SurfaceGrid(int ambient_dim, int cells);

    int ambient_dim() const noexcept { return static_cast<int>(coords_.size()); }
    int cells() const noexcept { return cells_; }
    int nodes_per_side() const noexcept { return cells_ + 1; }
    std::size_t node(int i, int k) const { return static_cast<std::size_t>(k) * (cells_ + 1) + i; }
    bool is_boundary(int i, int k) const { return i == 0 || k == 0 || i == cells_ || k == cells_; }

    double& at(int coord, int i, int k) { return coords_[coord][node(i, k)]; }
    double at(int coord, int i, int k) const { return coords_[coord][node(i, k)]; }
    std::vector<double> point(int i, int k) const;
    const std::vector<double>& coordinate(int j) const { return coords_[j]; }

private:
    int cells_;
    std::vector<std::vector<double>> coords_;
};

struct RelaxOptions {
    int cells = 32;          // M
    double tolerance = 1e-8; // on max |discrete Laplacian| of any coordinate
    int max_sweeps = 500000;
    double omega = 1.0;
    bool record_history = true;
};

struct SweepRecord {
    int sweep = 0;
    double area = 0.0;
    double energy = 0.0;
    double residual = 0.0;
};

struct RelaxResult {
    SurfaceGrid surface;
    int sweeps = 0;
    double residual = 0.0;
    std::vector<SweepRecord> history{}; // entry k is the state after k sweeps
};

/// Nodes of a two-parameter patch at u = i/M, v = k/M.
SurfaceGrid sample_surface(const SurfacePatch& patch, int cells);

/// Samples the loop onto the boundary nodes; no relaxation.
SurfaceGrid boundary_grid(const BoundaryLoop& loop, int cells);

/// Gauss-Seidel relaxation of every coordinate with fixed boundary nodes.
/// Throws NonConvergenceError after max_sweeps.
RelaxResult relax_harmonic_surface(const BoundaryLoop& loop, const RelaxOptions& options = {});
RelaxResult relax_harmonic_surface(SurfaceGrid initial, const RelaxOptions& options);

/// Midpoint area: sum over cells of |t_u ^ t_v| du dv with cell-averaged tangents.
double surface_area(const SurfaceGrid& surface);

/// Sum over coordinates of the lattice Dirichlet energy on the parameter square.
double vector_dirichlet_energy(const SurfaceGrid& surface);

/// max over coordinates and interior nodes of |discrete Laplacian|.
double surface_laplace_residual(const SurfaceGrid& surface);

struct AreaProbeStats {
    std::vector<double> coordinate_area_delta; // componentwise node noise
    std::vector<double> normal_area_delta;     // noise along node normals
    std::vector<double> energy_delta;          // vector Dirichlet energy, componentwise noise
};

/// Zero-boundary perturbations smoothed by one Jacobi sweep and rescaled to
/// max-abs displacement `magnitude`.
AreaProbeStats area_variation_probe(const SurfaceGrid& surface, double magnitude, int trials, std::uint64_t seed);

} // namespace flowcalc
