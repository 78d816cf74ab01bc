#include "flowcalc/integral.hpp"

#include "flowcalc/error.hpp"

#include <cmath>
#include <sstream>

namespace flowcalc {

namespace {

std::string format_point(std::span<const double> p) {
    std::ostringstream os;
    os.precision(6);
    os << '(';
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
    os << ')';
    return os.str();
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double length(std::span<const double> a) { return std::sqrt(dot(a, a)); }

void require_dims(const FlowField& field, int dim, const char* what) {
    if (field.dim() != dim) {
        throw DimensionError(std::string(what) + ": flow dimension " + std::to_string(field.dim()) +
                             " does not match " + std::to_string(dim));
    }
}

// Visits every midpoint cell of a patch in canonical order (parameter 1 fastest).
template <class Fn>
void for_each_cell(const SurfacePatch& s, double h, Fn&& fn) {
    const int m = s.parameters();
    double cell_measure = 1.0;
    for (int c : s.cells()) cell_measure /= c;
    std::vector<int> idx(m, 0);
    std::vector<double> u(m);
    while (true) {
        for (int k = 0; k < m; ++k) u[k] = (idx[k] + 0.5) / s.cells()[k];
        const SurfaceElement element = surface_element_at(s, u, h);
        fn(s.point(u), element, cell_measure);
        int k = 0;
        while (k < m && ++idx[k] == s.cells()[k]) idx[k++] = 0;
        if (k == m) break;
    }
}

// Visits midpoint nodes of every face: fn(point, outward normal, weight).
template <class Fn>
void for_each_face_node(const BoxInstrument& box, Fn&& fn) {
    const int n = box.dim();
    const int cells = box.cells_per_axis();
    for (const BoxFace& face : box.faces()) {
        std::vector<int> others;
        for (int a = 0; a < n; ++a) {
            if (a != face.axis) others.push_back(a);
        }
        const double weight = face.area / std::pow(static_cast<double>(cells), static_cast<double>(others.size()));
        std::vector<int> idx(others.size(), 0);
        std::vector<double> x(box.center());
        x[face.axis] = face.offset;
        while (true) {
            for (std::size_t k = 0; k < others.size(); ++k) {
                const int a = others[k];
                x[a] = box.center()[a] - 0.5 * box.edges()[a] + (idx[k] + 0.5) * box.edges()[a] / cells;
            }
            fn(std::span<const double>(x), std::span<const double>(face.outward_normal), weight);
            std::size_t k = 0;
            while (k < idx.size() && ++idx[k] == cells) idx[k++] = 0;
            if (k == idx.size()) break;
        }
    }
}

double normalized_term(const std::vector<double>& a, std::span<const double> normal, std::span<const double> x) {
    const double mag = length(a);
    if (mag == 0.0) throw DomainError("flow vanishes at quadrature node " + format_point(x));
    return dot(a, normal) / mag;
}

} // namespace

// --- CurvePath --------------------------------------------------------------

CurvePath::CurvePath(int dim, std::vector<Expr> coords, bool closed, int segments)
    : coords_(std::move(coords)), closed_(closed), segments_(segments) {
    if (dim < 1 || static_cast<int>(coords_.size()) != dim) {
        throw DimensionError("curve in dimension " + std::to_string(dim) + " needs " + std::to_string(dim) +
                             " coordinate expressions");
    }
    if (segments < 3) throw InvalidArgument("curve needs at least 3 segments");
    for (const Expr& e : coords_) {
        const VariableUsage use = variable_usage(e);
        if (use.max_x > 0 || use.max_u > 0) throw DimensionError("curve coordinates may only reference t");
        programs_.emplace_back(e);
    }
    if (closed_) {
        const auto a = point(0.0);
        const auto b = point(1.0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > 1e-9) {
                throw InvalidArgument("closed curve endpoints differ: " + format_point(a) + " vs " + format_point(b));
            }
        }
    }
}

CurvePath CurvePath::with_segments(int segments) const { return CurvePath(dim(), coords_, closed_, segments); }

std::vector<double> CurvePath::point(double t) const {
    std::vector<double> x(programs_.size());
    for (std::size_t i = 0; i < programs_.size(); ++i) x[i] = programs_[i]({.t = t});
    return x;
}

std::vector<double> CurvePath::tangent(double t, double h) const {
    if (!(h > 0.0)) throw InvalidArgument("difference step must be positive");
    std::vector<double> d(programs_.size());
    for (std::size_t i = 0; i < programs_.size(); ++i) {
        const Program& x = programs_[i];
        d[i] = (8.0 * (x({.t = t + h}) - x({.t = t - h})) - (x({.t = t + 2.0 * h}) - x({.t = t - 2.0 * h}))) / (12.0 * h);
    }
    return d;
}

// --- SurfacePatch -----------------------------------------------------------

SurfacePatch::SurfacePatch(int dim, std::vector<Expr> coords, std::vector<int> cells, bool closed)
    : coords_(std::move(coords)), cells_(std::move(cells)), closed_(closed) {
    if (dim < 2 || static_cast<int>(coords_.size()) != dim) {
        throw DimensionError("surface in dimension " + std::to_string(dim) + " needs " + std::to_string(dim) +
                             " coordinate expressions (dim >= 2)");
    }
    if (static_cast<int>(cells_.size()) != dim - 1) throw DimensionError("surface needs one grid count per parameter");
    for (int c : cells_) {
        if (c < 2) throw InvalidArgument("surface grid counts must be at least 2");
    }
    for (const Expr& e : coords_) {
        const VariableUsage use = variable_usage(e);
        if (use.max_x > 0 || use.uses_t || use.max_u > dim - 1) {
            throw DimensionError("surface coordinates may only reference u1..u" + std::to_string(dim - 1));
        }
        programs_.emplace_back(e);
    }
}

SurfacePatch SurfacePatch::reversed() const {
    SurfacePatch s = *this;
    s.orientation_ = -orientation_;
    return s;
}

SurfacePatch SurfacePatch::with_cells(std::vector<int> cells) const {
    SurfacePatch s(dim(), coords_, std::move(cells), closed_);
    s.orientation_ = orientation_;
    return s;
}

std::vector<double> SurfacePatch::point(std::span<const double> u) const {
    if (static_cast<int>(u.size()) != parameters()) throw DimensionError("wrong number of surface parameters");
    std::vector<double> x(programs_.size());
    for (std::size_t i = 0; i < programs_.size(); ++i) x[i] = programs_[i]({.u = u});
    return x;
}

SurfaceElement surface_element_at(const SurfacePatch& surface, std::span<const double> u, double h) {
    if (!(h > 0.0)) throw InvalidArgument("difference step must be positive");
    const int m = surface.parameters();
    std::vector<std::vector<double>> tangents;
    std::vector<double> shifted(u.begin(), u.end());
    double tangent_scale = 1.0;
    for (int k = 0; k < m; ++k) {
        shifted[k] = u[k] + h;
        auto plus = surface.point(shifted);
        shifted[k] = u[k] - h;
        const auto minus = surface.point(shifted);
        shifted[k] = u[k];
        for (std::size_t i = 0; i < plus.size(); ++i) plus[i] = (plus[i] - minus[i]) / (2.0 * h);
        tangent_scale *= length(plus);
        tangents.push_back(std::move(plus));
    }
    GradedElement blade = blade_from_vectors(tangents);
    const double area = norm(blade);
    if (tangent_scale == 0.0 || !(area > 1e-12 * tangent_scale)) {
        throw DegenerateElementError("degenerate surface element at parameters " + format_point(u));
    }
    const GradedElement dual = hodge_dual(blade);
    std::vector<double> normal(dual.coeffs().begin(), dual.coeffs().end());
    for (double& c : normal) c *= surface.orientation() / area;
    return {std::move(blade), area, std::move(normal)};
}

// --- BoxInstrument ----------------------------------------------------------

BoxInstrument::BoxInstrument(std::vector<double> center, std::vector<double> edges, int cells_per_axis)
    : center_(std::move(center)), edges_(std::move(edges)), cells_(cells_per_axis) {
    if (center_.empty() || center_.size() != edges_.size()) throw DimensionError("box center and edges disagree");
    if (cells_ < 1) throw InvalidArgument("box quadrature needs at least one cell per axis");
    const int n = dim();
    for (int a = 0; a < n; ++a) {
        if (!(edges_[a] > 0.0)) throw InvalidArgument("box edge " + std::to_string(a + 1) + " must be positive");
    }
    for (int a = 0; a < n; ++a) {
        double area = 1.0;
        for (int b = 0; b < n; ++b) {
            if (b != a) area *= edges_[b];
        }
        for (int side : {-1, 1}) {
            BoxFace face;
            face.axis = a;
            face.side = side;
            face.offset = center_[a] + 0.5 * side * edges_[a];
            face.area = area;
            face.outward_normal.assign(n, 0.0);
            face.outward_normal[a] = side;
            faces_.push_back(std::move(face));
        }
    }
}

BoxInstrument BoxInstrument::with_cells(int cells_per_axis) const { return BoxInstrument(center_, edges_, cells_per_axis); }

double BoxInstrument::volume() const {
    double v = 1.0;
    for (double e : edges_) v *= e;
    return v;
}

BoxInstrument box_boundary(std::vector<double> center, std::vector<double> edges, int cells_per_axis) {
    return BoxInstrument(std::move(center), std::move(edges), cells_per_axis);
}

// --- integrals --------------------------------------------------------------

double circulation(const FlowField& field, const CurvePath& curve, double h) {
    require_dims(field, curve.dim(), "circulation");
    if (!curve.closed()) throw InvalidArgument("circulation needs a closed curve");
    const int n = curve.segments();
    const double dt = 1.0 / n;
    std::vector<double> a(field.dim());
    double sum = 0.0;
    for (int k = 0; k < n; ++k) {
        const double t = (k + 0.5) * dt;
        const auto x = curve.point(t);
        field.evaluate(x, a);
        sum += dot(a, curve.tangent(t, h)) * dt;
    }
    return sum;
}

double circulation(const FlowField& field, const Polyline& loop) {
    if (loop.vertices.size() < 2) throw InvalidArgument("polyline loop needs at least 2 vertices");
    if (loop.segments_per_edge < 1) throw InvalidArgument("polyline needs at least one segment per edge");
    const std::size_t n = loop.vertices.front().size();
    require_dims(field, static_cast<int>(n), "circulation");
    std::vector<double> a(n), x(n), d(n);
    double sum = 0.0;
    const int k = loop.segments_per_edge;
    for (std::size_t e = 0; e < loop.vertices.size(); ++e) {
        const auto& p = loop.vertices[e];
        const auto& q = loop.vertices[(e + 1) % loop.vertices.size()];
        if (p.size() != n || q.size() != n) throw DimensionError("polyline vertices of different dimension");
        for (std::size_t i = 0; i < n; ++i) d[i] = q[i] - p[i];
        double edge_sum = 0.0;
        for (int j = 0; j < k; ++j) {
            const double s = (j + 0.5) / k;
            for (std::size_t i = 0; i < n; ++i) x[i] = p[i] + s * d[i];
            field.evaluate(x, a);
            edge_sum += dot(a, d);
        }
        sum += edge_sum / k;
    }
    return sum;
}

double integral_measure(const FlowField& field, const SurfacePatch& surface, double h) {
    require_dims(field, surface.dim(), "integral_measure");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    for_each_cell(surface, h, [&](const std::vector<double>& x, const SurfaceElement& el, double du) {
        field.evaluate(x, a);
        sum += dot(a, el.unit_normal) * el.area_density * du;
    });
    return sum;
}

double integral_measure(const FlowField& field, const BoxInstrument& box) {
    require_dims(field, box.dim(), "integral_measure");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    for_each_face_node(box, [&](std::span<const double> x, std::span<const double> normal, double w) {
        field.evaluate(x, a);
        sum += dot(a, normal) * w;
    });
    return sum;
}

double integral_instrument_norm(const SurfacePatch& surface, double h) {
    double sum = 0.0;
    for_each_cell(surface, h, [&](const std::vector<double>&, const SurfaceElement& el, double du) {
        sum += el.area_density * du;
    });
    return sum;
}

double integral_instrument_norm(const BoxInstrument& box) {
    double sum = 0.0;
    for (const BoxFace& f : box.faces()) sum += f.area;
    return sum;
}

double integral_normalized_measure(const FlowField& field, const SurfacePatch& surface, double h) {
    require_dims(field, surface.dim(), "integral_normalized_measure");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    double area = 0.0;
    for_each_cell(surface, h, [&](const std::vector<double>& x, const SurfaceElement& el, double du) {
        field.evaluate(x, a);
        sum += normalized_term(a, el.unit_normal, x) * el.area_density * du;
        area += el.area_density * du;
    });
    return sum / area;
}

double integral_normalized_measure(const FlowField& field, const BoxInstrument& box) {
    require_dims(field, box.dim(), "integral_normalized_measure");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    double area = 0.0;
    for_each_face_node(box, [&](std::span<const double> x, std::span<const double> normal, double w) {
        field.evaluate(x, a);
        sum += normalized_term(a, normal, x) * w;
        area += w;
    });
    return sum / area;
}

double absolute_flux(const FlowField& field, const SurfacePatch& surface, double h) {
    require_dims(field, surface.dim(), "absolute_flux");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    for_each_cell(surface, h, [&](const std::vector<double>& x, const SurfaceElement& el, double du) {
        field.evaluate(x, a);
        sum += std::abs(dot(a, el.unit_normal)) * el.area_density * du;
    });
    return sum;
}

double absolute_flux(const FlowField& field, const BoxInstrument& box) {
    require_dims(field, box.dim(), "absolute_flux");
    std::vector<double> a(field.dim());
    double sum = 0.0;
    for_each_face_node(box, [&](std::span<const double> x, std::span<const double> normal, double w) {
        field.evaluate(x, a);
        sum += std::abs(dot(a, normal)) * w;
    });
    return sum;
}

} // namespace flowcalc
