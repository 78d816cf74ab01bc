#include "flowcalc/svg.hpp"

#include "flowcalc/error.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace flowcalc {

namespace {

constexpr double kMargin = 40.0;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    if (std::string_view(buf) == "-0.000") return "0.000";
    return buf;
}

std::string header() {
    const std::string size = std::to_string(kCanvasSize);
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + size + "\" height=\"" + size +
           "\" viewBox=\"0 0 " + size + " " + size + "\">\n"
           "<rect x=\"0\" y=\"0\" width=\"" + size + "\" height=\"" + size + "\" fill=\"white\"/>\n";
}

} // namespace

std::string field_svg(const FlowField& field, const PlotWindow& w, int density) {
    if (field.dim() != 2) throw DimensionError("arrow plots need a 2-dimensional field");
    if (density < 1) throw InvalidArgument("plot density must be at least 1");
    if (!(w.x_lo < w.x_hi && w.y_lo < w.y_hi)) throw InvalidArgument("plot window must have positive extent");

    const double span = kCanvasSize - 2.0 * kMargin;
    const double cell = span / density;
    std::vector<std::array<double, 4>> samples; // px, py, ax, ay
    double peak = 0.0;
    std::vector<double> a(2);
    for (int k = 0; k < density; ++k) {
        for (int i = 0; i < density; ++i) {
            const double fx = (i + 0.5) / density, fy = (k + 0.5) / density;
            const std::vector<double> x{w.x_lo + fx * (w.x_hi - w.x_lo), w.y_lo + fy * (w.y_hi - w.y_lo)};
            field.evaluate(x, a);
            peak = std::max(peak, std::hypot(a[0], a[1]));
            samples.push_back({kMargin + fx * span, kCanvasSize - kMargin - fy * span, a[0], a[1]});
        }
    }

    std::string out = header();
    out += "<g stroke=\"black\" fill=\"black\" stroke-width=\"1.2\">\n";
    for (const auto& [px, py, ax, ay] : samples) {
        const double mag = std::hypot(ax, ay);
        if (peak == 0.0 || mag == 0.0) {
            out += "<circle class=\"dot\" cx=\"" + fmt(px) + "\" cy=\"" + fmt(py) + "\" r=\"1.5\"/>\n";
            continue;
        }
        const double len = 0.9 * cell * mag / peak;
        const double dx = ax / mag, dy = -ay / mag;
        const double x0 = px - 0.5 * len * dx, y0 = py - 0.5 * len * dy;
        const double x1 = px + 0.5 * len * dx, y1 = py + 0.5 * len * dy;
        const double head = 0.3 * len;
        const double bx = x1 - head * dx, by = y1 - head * dy;
        const double hx = -dy * 0.5 * head, hy = dx * 0.5 * head;
        out += "<line class=\"arrow\" x1=\"" + fmt(x0) + "\" y1=\"" + fmt(y0) + "\" x2=\"" + fmt(x1) + "\" y2=\"" +
               fmt(y1) + "\"/>\n";
        out += "<polygon class=\"head\" points=\"" + fmt(x1) + "," + fmt(y1) + " " + fmt(bx + hx) + "," + fmt(by + hy) +
               " " + fmt(bx - hx) + "," + fmt(by - hy) + "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

std::string surface_svg(const SurfaceGrid& s, const SurfaceView& view) {
    if (s.ambient_dim() != 3) throw DimensionError("wireframes need a surface in 3 dimensions");
    const double az = view.azimuth * std::numbers::pi / 180.0;
    const double el = view.elevation * std::numbers::pi / 180.0;
    const int m = s.cells();

    std::vector<std::array<double, 2>> screen(static_cast<std::size_t>(m + 1) * (m + 1));
    double lo_x = INFINITY, hi_x = -INFINITY, lo_y = INFINITY, hi_y = -INFINITY;
    for (int k = 0; k <= m; ++k) {
        for (int i = 0; i <= m; ++i) {
            const double x = s.at(0, i, k), y = s.at(1, i, k), z = s.at(2, i, k);
            const double rx = x * std::cos(az) + y * std::sin(az);
            const double ry = -x * std::sin(az) + y * std::cos(az);
            const double sx = rx, sy = ry * std::sin(el) + z * std::cos(el);
            screen[s.node(i, k)] = {sx, sy};
            lo_x = std::min(lo_x, sx), hi_x = std::max(hi_x, sx);
            lo_y = std::min(lo_y, sy), hi_y = std::max(hi_y, sy);
        }
    }
    const double extent = std::max(hi_x - lo_x, hi_y - lo_y);
    const double scale = extent > 0.0 ? (kCanvasSize - 2.0 * kMargin) / extent : 1.0;
    const double cx = 0.5 * (lo_x + hi_x), cy = 0.5 * (lo_y + hi_y);
    auto point = [&](int i, int k) {
        const auto& p = screen[s.node(i, k)];
        return fmt(kCanvasSize / 2.0 + scale * (p[0] - cx)) + "," + fmt(kCanvasSize / 2.0 - scale * (p[1] - cy));
    };

    std::string out = header();
    out += "<g stroke=\"black\" fill=\"none\" stroke-width=\"0.8\">\n";
    for (int k = 0; k <= m; ++k) {
        out += "<polyline class=\"wire\" points=\"";
        for (int i = 0; i <= m; ++i) out += (i ? " " : "") + point(i, k);
        out += "\"/>\n";
    }
    for (int i = 0; i <= m; ++i) {
        out += "<polyline class=\"wire\" points=\"";
        for (int k = 0; k <= m; ++k) out += (k ? " " : "") + point(i, k);
        out += "\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

} // namespace flowcalc
