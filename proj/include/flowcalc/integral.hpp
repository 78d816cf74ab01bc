#pragma once

// Integral characteristics of a flow: circulation along closed curves and
// flux-type sums over (n-1)-surfaces and box boundaries.
//
// All quadrature is composite midpoint on uniform parameter grids. Surface
// normals are nu = *(t_1 ^ ... ^ t_{n-1}) / |t_1 ^ ... ^ t_{n-1}|, so the
// orientation of a patch follows from the order of its parameters.

#include "flowcalc/exterior.hpp"
#include "flowcalc/expr.hpp"
#include "flowcalc/field.hpp"

#include <span>
#include <vector>

namespace flowcalc {

/// x(t), t in [0, 1], given by n coordinate expressions in t.
class CurvePath {
public:
    CurvePath(int dim, std::vector<Expr> coords, bool closed, int segments = 4096);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    bool closed() const noexcept { return closed_; }
    int segments() const noexcept { return segments_; }
    const std::vector<Expr>& coords() const noexcept { return coords_; }
    CurvePath with_segments(int segments) const;

    std::vector<double> point(double t) const;
    /// dx/dt by the fourth-order central difference with step h; exact on cubics.
    std::vector<double> tangent(double t, double h = kDefaultStep) const;

private:
    std::vector<Expr> coords_;
    std::vector<Program> programs_;
    bool closed_;
    int segments_;
};

/// Closed polygon through the vertices; each edge split into equal segments.
struct Polyline {
    std::vector<std::vector<double>> vertices;
    int segments_per_edge = 1024;
};

/// X(u), u in [0, 1]^(n-1): n coordinate expressions in u1..u(n-1).
class SurfacePatch {
public:
    SurfacePatch(int dim, std::vector<Expr> coords, std::vector<int> cells, bool closed = false);

    int dim() const noexcept { return static_cast<int>(coords_.size()); }
    int parameters() const noexcept { return dim() - 1; }
    const std::vector<int>& cells() const noexcept { return cells_; }
    bool closed() const noexcept { return closed_; }
    /// +1, or -1 after reversed().
    int orientation() const noexcept { return orientation_; }
    const std::vector<Expr>& coords() const noexcept { return coords_; }

    SurfacePatch reversed() const;
    SurfacePatch with_cells(std::vector<int> cells) const;

    std::vector<double> point(std::span<const double> u) const;

private:
    std::vector<Expr> coords_;
    std::vector<Program> programs_;
    std::vector<int> cells_;
    bool closed_;
    int orientation_ = 1;
};

struct SurfaceElement {
    GradedElement blade;             // grade n-1 tangent blade
    double area_density = 0.0;       // |blade|
    std::vector<double> unit_normal; // *blade / |blade|, times the patch orientation
};

/// Throws DegenerateElementError when the tangents are rank deficient.
SurfaceElement surface_element_at(const SurfacePatch& surface, std::span<const double> u, double h = kDefaultStep);

/// One face of a box: the (n-1)-box orthogonal to `axis` on side -1 or +1.
struct BoxFace {
    int axis = 0;
    int side = 1;
    double offset = 0.0; // coordinate of the face along `axis`
    double area = 0.0;
    std::vector<double> outward_normal;
};

/// Boundary of an axis-aligned box as 2n outward-oriented faces.
class BoxInstrument {
public:
    BoxInstrument(std::vector<double> center, std::vector<double> edges, int cells_per_axis = 16);

    int dim() const noexcept { return static_cast<int>(center_.size()); }
    const std::vector<double>& center() const noexcept { return center_; }
    const std::vector<double>& edges() const noexcept { return edges_; }
    const std::vector<BoxFace>& faces() const noexcept { return faces_; }
    int cells_per_axis() const noexcept { return cells_; }
    BoxInstrument with_cells(int cells_per_axis) const;

    double volume() const;

private:
    std::vector<double> center_;
    std::vector<double> edges_;
    int cells_;
    std::vector<BoxFace> faces_;
};

BoxInstrument box_boundary(std::vector<double> center, std::vector<double> edges, int cells_per_axis = 16);

/// Closed-curve integral of <a(x(t)), x'(t)> dt. Rejects open curves.
double circulation(const FlowField& field, const CurvePath& curve, double h = kDefaultStep);
double circulation(const FlowField& field, const Polyline& loop);

/// Flux: sum over cells of <a, nu> |blade| du.
double integral_measure(const FlowField& field, const SurfacePatch& surface, double h = kDefaultStep);
double integral_measure(const FlowField& field, const BoxInstrument& box);

/// Total (n-1)-area.
double integral_instrument_norm(const SurfacePatch& surface, double h = kDefaultStep);
double integral_instrument_norm(const BoxInstrument& box);

/// Area-averaged cosine between the flow and the unit normal. Throws
/// DomainError if the flow vanishes at a quadrature node.
double integral_normalized_measure(const FlowField& field, const SurfacePatch& surface, double h = kDefaultStep);
double integral_normalized_measure(const FlowField& field, const BoxInstrument& box);

/// Integral of |<a, nu>| over the surface.
double absolute_flux(const FlowField& field, const SurfacePatch& surface, double h = kDefaultStep);
double absolute_flux(const FlowField& field, const BoxInstrument& box);

} // namespace flowcalc
