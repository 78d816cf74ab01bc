#pragma once

// Numerical checks of the links between integral and differential
// characteristics, and the Dirichlet machinery behind harmonicity.

#include "flowcalc/field.hpp"
#include "flowcalc/lattice.hpp"
#include "flowcalc/polynomial.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace flowcalc {

struct VerdictRow {
    int trial = 0;
    std::string field;                  // short description of the drawn field
    int dim = 0;
    double integral_residual = 0.0;     // circulation / flux / energy-distance side
    double differential_residual = 0.0; // skew / divergence / Laplacian side
    bool agree = false;
};

struct VerdictTable {
    std::string suite;
    std::uint64_t seed = 0;
    double tolerance = 0.0;
    double escape = 0.0;
    std::vector<VerdictRow> rows;

    int agreements() const;
    bool all_agree() const { return agreements() == static_cast<int>(rows.size()); }
};

struct SuiteOptions {
    int trials = 100;
    std::uint64_t seed = 0;
    double tolerance = 1e-6;
    int probes = 20;              // loops or boxes per trial
    int segments_per_edge = 1024; // polyline loop quadrature
    int box_cells = 8;            // face quadrature cells per axis
    int grid = 9;                 // lattice nodes per axis for differential residuals
    double h = kDefaultStep;

    /// "Definitely violated" threshold: ten times the tolerance.
    double escape() const { return 10.0 * tolerance; }
};

/// Both residuals small, or both beyond the escape threshold.
bool residuals_agree(double integral_residual, double differential_residual, double tol, double escape);

/// Circulation over random closed polylines vs skew residual, for one field.
VerdictRow stokes_row(const FlowField& field, Rng& rng, const SuiteOptions& options);
/// Flux through random boxes vs divergence residual, for one field.
VerdictRow gauss_row(const FlowField& field, Rng& rng, const SuiteOptions& options);

/// Even trials draw gradients of random cubic potentials, odd trials generic
/// cubic fields; dimension 2 or 3 per trial.
VerdictTable verify_stokes_link(const SuiteOptions& options);
/// Even trials draw solenoidal fields (rotated gradients in 2-D, curls in
/// 3-D), odd trials generic fields.
VerdictTable verify_gauss_link(const SuiteOptions& options);
/// Even trials draw harmonic polynomials, odd trials generic cubics. The
/// integral side is the energy-norm distance sqrt(E(phi) - E(phi*)) to the
/// Dirichlet minimizer phi* with the same boundary values; the differential
/// side is the discrete Laplacian residual.
VerdictTable verify_harmonic_link(const SuiteOptions& options);

struct DirichletProblem {
    ScalarGrid boundary;         // only nodes on the region boundary are read
    double tolerance = 1e-8;     // on max |discrete Laplacian|
    int max_sweeps = 500000;
    double omega = 1.0;          // 1 = Gauss-Seidel, (1, 2) = SOR

    static DirichletProblem from_function(const Region& region, const std::function<double(std::span<const double>)>& g);
};

struct LaplaceSolution {
    ScalarGrid phi;
    int sweeps = 0;
    double residual = 0.0;
    std::vector<double> residual_history{}; // after each sweep
};

/// 5-point (2-D) / 7-point (3-D) Laplacian relaxed sweep by sweep in
/// lexicographic node order. Throws NonConvergenceError after max_sweeps.
LaplaceSolution solve_laplace_dirichlet(const DirichletProblem& problem);

/// max over interior nodes of |discrete Laplacian|, the solver's residual.
double laplace_residual(const ScalarGrid& phi);

/// Sum over lattice edges of (difference / h)^2 times the edge's dual volume.
/// Its minimizer under fixed boundary values is the discrete harmonic function.
double dirichlet_energy(const ScalarGrid& phi);

struct StationarityStats {
    std::vector<double> energy_delta;        // E(phi + d) - E(phi)
    std::vector<double> flux_delta;          // discrete boundary flux of grad over an interior box
    std::vector<double> gradient_norm_delta; // integral of |grad| difference
    double min_energy_delta = 0.0;
    double max_energy_delta = 0.0;
    int positive = 0;
};

/// Random zero-boundary perturbations with max-abs value `magnitude`.
StationarityStats stationarity_probe(const ScalarGrid& phi, int perturbations, double magnitude, std::uint64_t seed);

} // namespace flowcalc
