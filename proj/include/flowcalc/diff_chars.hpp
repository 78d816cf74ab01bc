#pragma once

// Differential characteristics of a flow sampled over a lattice region.
// Every residual is a max-norm over lattice nodes.

#include "flowcalc/expr.hpp"
#include "flowcalc/field.hpp"
#include "flowcalc/lattice.hpp"

#include <vector>

namespace flowcalc {

inline constexpr double kDefaultTolerance = 1e-6;
inline constexpr int kDefaultGrid = 33;

/// max |J_ij - J_ji| over nodes and index pairs.
double skew_residual(const FlowField& field, const Region& region, double h = kDefaultStep);

/// max |trace J| over nodes.
double divergence_residual(const FlowField& field, const Region& region, double h = kDefaultStep);

struct PotentialReconstruction {
    ScalarGrid potential;               // zero at the gauge origin
    double path_independence = 0.0;     // max |forward staircase - reverse staircase|
    std::vector<double> gauge_origin;   // the region's lower corner
};

/// Trapezoid line integrals of the flow along axis-ordered staircase paths
/// from the lower corner. The forward path walks axis 1 first, the reverse
/// path axis n first; their disagreement certifies path independence.
PotentialReconstruction reconstruct_potential(const FlowField& field, const Region& region);

/// max over interior nodes of |sum_i second difference along axis i|.
/// Needs at least 3 nodes per axis.
double laplacian_residual(const ScalarGrid& phi);
double laplacian_residual(const Expr& phi, const Region& region);

struct Tolerances {
    double skew = kDefaultTolerance;
    double divergence = kDefaultTolerance;
    double path_independence = kDefaultTolerance;
    double harmonicity = kDefaultTolerance;
};

struct CharacteristicReport {
    double skew = 0.0;
    double divergence = 0.0;
    double path_independence = 0.0;
    double harmonicity = 0.0; // Laplacian residual of the reconstructed potential

    bool skew_closed = false;   // skew <= tol
    bool direct_closed = false; // divergence <= tol
    bool laminar = false;       // skew_closed and path_independence <= tol
    bool harmonic = false;      // laminar and harmonicity <= tol

    Tolerances tolerances;
    std::vector<double> gauge_origin;
};

CharacteristicReport classify_flow(const FlowField& field, const Region& region, const Tolerances& tolerances = {},
                                   double h = kDefaultStep);

} // namespace flowcalc
