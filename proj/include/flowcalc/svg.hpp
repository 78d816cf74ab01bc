#pragma once

// Standalone 800x800 SVG figures: arrow plots of planar flows and wireframe
// projections of surface grids.

#include "flowcalc/field.hpp"
#include "flowcalc/min_surface.hpp"

#include <string>

namespace flowcalc {

inline constexpr int kCanvasSize = 800;

struct PlotWindow {
    double x_lo = -1.0, x_hi = 1.0;
    double y_lo = -1.0, y_hi = 1.0;
};

/// density x density arrows at cell centres, lengths scaled by the largest
/// magnitude in the window. Zero vectors are drawn as dots. Needs dim 2.
std::string field_svg(const FlowField& field, const PlotWindow& window, int density);

/// Orthographic view: rotate by `azimuth` degrees about the third axis, then
/// tilt so that `elevation` = 90 looks straight down the third axis.
struct SurfaceView {
    double azimuth = 0.0;
    double elevation = 90.0;
};

/// Grid lines of a surface in ambient dimension 3.
std::string surface_svg(const SurfaceGrid& surface, const SurfaceView& view = {});

} // namespace flowcalc
