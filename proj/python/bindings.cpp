#include "flowcalc/cli.hpp"
#include "flowcalc/diff_chars.hpp"
#include "flowcalc/error.hpp"
#include "flowcalc/exterior.hpp"
#include "flowcalc/input_files.hpp"
#include "flowcalc/min_surface.hpp"
#include "flowcalc/svg.hpp"
#include "flowcalc/variational.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace flowcalc;

namespace {

Region box_region(const FlowField& f, const std::vector<double>& lo, const std::vector<double>& hi, int grid) {
    if (lo.empty() && hi.empty()) return Region::cube(f.dim(), 0.0, 1.0, grid);
    return Region(lo, hi, std::vector<int>(lo.size(), grid));
}

py::dict table_dict(const VerdictTable& t) {
    py::list rows;
    for (const auto& r : t.rows) {
        py::dict d;
        d["trial"] = r.trial;
        d["field"] = r.field;
        d["dim"] = r.dim;
        d["integral_residual"] = r.integral_residual;
        d["differential_residual"] = r.differential_residual;
        d["agree"] = r.agree;
        rows.append(d);
    }
    py::dict out;
    out["suite"] = t.suite;
    out["tolerance"] = t.tolerance;
    out["escape"] = t.escape;
    out["agreements"] = t.agreements();
    out["all_agree"] = t.all_agree();
    out["rows"] = rows;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exterior algebra and flow characteristics";
    m.attr("__version__") = FLOWCALC_VERSION;

    auto base = py::register_exception<Error>(m, "Error");
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NonConvergenceError>(m, "NonConvergenceError", base.ptr());
    py::register_exception<InvalidArgument>(m, "InvalidArgument", base.ptr());

    py::class_<GradedElement>(m, "Element")
        .def(py::init([](int dim, int grade, std::vector<double> coeffs) { return GradedElement(dim, grade, std::move(coeffs)); }),
             py::arg("dim"), py::arg("grade"), py::arg("coeffs"))
        .def_static("parse", &parse_element, py::arg("text"), py::arg("dim"))
        .def_property_readonly("dim", &GradedElement::dim)
        .def_property_readonly("grade", &GradedElement::grade)
        .def_property_readonly("coeffs", [](const GradedElement& u) { return std::vector<double>(u.coeffs().begin(), u.coeffs().end()); })
        .def("__xor__", [](const GradedElement& a, const GradedElement& b) { return wedge(a, b); })
        .def("__add__", [](const GradedElement& a, const GradedElement& b) { return a + b; })
        .def("__sub__", [](const GradedElement& a, const GradedElement& b) { return a - b; })
        .def("__mul__", [](const GradedElement& a, double s) { return a * s; })
        .def("__rmul__", [](const GradedElement& a, double s) { return s * a; })
        .def("__neg__", [](const GradedElement& a) { return -a; })
        .def("__eq__", [](const GradedElement& a, const GradedElement& b) { return a == b; })
        .def("__str__", [](const GradedElement& u) { return to_string(u); })
        .def("__repr__", [](const GradedElement& u) { return "Element('" + to_string(u) + "', dim=" + std::to_string(u.dim()) + ")"; });

    m.def("wedge", &wedge);
    m.def("dot", &scalar_product);
    m.def("norm", &norm);
    m.def("hodge", &hodge_dual);
    m.def("normalized_measure", &normalized_measure);
    m.def("blade", [](const std::vector<std::vector<double>>& vectors) { return blade_from_vectors(vectors); }, py::arg("vectors"));

    py::class_<FlowField>(m, "Flow")
        .def_static("parse", &parse_flow_spec, py::arg("text"))
        .def_static("gradient", [](const std::string& phi, int dim, double h) {
            return gradient_flow(parse_expression(phi, Scope{.dim = dim}), dim, h);
        }, py::arg("phi"), py::arg("dim"), py::arg("h") = kDefaultStep)
        .def_property_readonly("dim", &FlowField::dim)
        .def("__call__", [](const FlowField& f, const std::vector<double>& x) { return f(x); });

    m.def("classify", [](const FlowField& f, std::vector<double> lo, std::vector<double> hi, int grid, double tol) {
        const CharacteristicReport c = classify_flow(f, box_region(f, lo, hi, grid), Tolerances{tol, tol, tol, tol});
        py::dict d;
        d["skew"] = c.skew;
        d["divergence"] = c.divergence;
        d["path_independence"] = c.path_independence;
        d["harmonicity"] = c.harmonicity;
        d["skew_closed"] = c.skew_closed;
        d["direct_closed"] = c.direct_closed;
        d["laminar"] = c.laminar;
        d["harmonic"] = c.harmonic;
        return d;
    }, py::arg("flow"), py::arg("lo") = std::vector<double>{}, py::arg("hi") = std::vector<double>{},
       py::arg("grid") = kDefaultGrid, py::arg("tol") = kDefaultTolerance);

    m.def("circulation", [](const FlowField& f, const std::string& curve) { return circulation(f, parse_curve_spec(curve)); },
          py::arg("flow"), py::arg("curve"));
    m.def("flux", [](const FlowField& f, const std::string& surface) {
        const SurfaceSpec s = parse_surface_spec(surface);
        return std::visit([&](const auto& spec) { return integral_measure(f, spec); }, s);
    }, py::arg("flow"), py::arg("surface"));

    m.def("verify", [](const std::string& suite, int trials, std::uint64_t seed, double tol) {
        SuiteOptions o;
        o.trials = trials;
        o.seed = seed;
        o.tolerance = tol;
        if (suite == "stokes") return table_dict(verify_stokes_link(o));
        if (suite == "gauss") return table_dict(verify_gauss_link(o));
        if (suite == "harmonic") return table_dict(verify_harmonic_link(o));
        throw InvalidArgument("unknown suite '" + suite + "'");
    }, py::arg("suite"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("tol") = kDefaultTolerance);

    m.def("solve_laplace", [](const std::string& boundary, int grid, double tol) {
        const BoundarySpec spec = parse_boundary_spec(boundary);
        const Program g(spec.phi);
        DirichletProblem p = DirichletProblem::from_function(Region(spec.lo, spec.hi, std::vector<int>(spec.dim, grid)),
                                                             [&](std::span<const double> x) { return g(Bindings{.x = x}); });
        p.tolerance = tol;
        const LaplaceSolution s = solve_laplace_dirichlet(p);
        py::dict d;
        d["values"] = std::vector<double>(s.phi.values().begin(), s.phi.values().end());
        d["sweeps"] = s.sweeps;
        d["residual"] = s.residual;
        d["energy"] = dirichlet_energy(s.phi);
        return d;
    }, py::arg("boundary"), py::arg("grid") = kDefaultGrid, py::arg("tol") = 1e-8);

    m.def("relax_surface", [](const std::string& curve, int cells, double tol) {
        RelaxOptions o;
        o.cells = cells;
        o.tolerance = tol;
        o.record_history = false;
        const RelaxResult r = relax_harmonic_surface(BoundaryLoop(parse_curve_spec(curve)), o);
        std::vector<std::vector<double>> coords;
        for (int j = 0; j < r.surface.ambient_dim(); ++j) coords.push_back(r.surface.coordinate(j));
        py::dict d;
        d["coords"] = coords;
        d["sweeps"] = r.sweeps;
        d["residual"] = r.residual;
        d["area"] = surface_area(r.surface);
        d["energy"] = vector_dirichlet_energy(r.surface);
        return d;
    }, py::arg("curve"), py::arg("cells") = 32, py::arg("tol") = 1e-8);

    m.def("plot_svg", [](const FlowField& f, int density) { return field_svg(f, PlotWindow{}, density); },
          py::arg("flow"), py::arg("density") = 12);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("args"));
}
