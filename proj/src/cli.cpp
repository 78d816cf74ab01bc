#include "flowcalc/cli.hpp"

#include "flowcalc/diff_chars.hpp"
#include "flowcalc/error.hpp"
#include "flowcalc/exterior.hpp"
#include "flowcalc/input_files.hpp"
#include "flowcalc/integral.hpp"
#include "flowcalc/min_surface.hpp"
#include "flowcalc/report.hpp"
#include "flowcalc/svg.hpp"
#include "flowcalc/variational.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#ifndef FLOWCALC_VERSION
#define FLOWCALC_VERSION "0.0.0"
#endif

namespace flowcalc {

namespace {

std::string join(const std::vector<double>& v, const char* sep = " ") {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += format_real(v[i]);
    }
    return out;
}

std::string one_line(std::string text) {
    std::replace(text.begin(), text.end(), '\n', ' ');
    return text;
}

Report started(const std::string& command) {
    Report r;
    r.add_provenance("tool", "flowcalc");
    r.add_provenance("version", FLOWCALC_VERSION);
    r.add_provenance("command", command);
    return r;
}

void emit(std::ostream& out, const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") out << content;
    else write_text_file(path, content);
}

Region unit_or_box(int dim, const std::string& box, int grid) {
    if (box.empty()) return Region::cube(dim, 0.0, 1.0, grid);
    auto [lo, hi] = parse_box_text(box);
    if (static_cast<int>(lo.size()) != dim) throw DimensionError("--box has " + std::to_string(lo.size()) + " intervals, field has dim " + std::to_string(dim));
    return Region(lo, hi, std::vector<int>(dim, grid));
}

// --- algebra ---------------------------------------------------------------

struct AlgebraArgs {
    int dim = 3;
    std::string op;
    std::string lhs;
    std::string rhs;
    std::string out;
};

int run_algebra(const AlgebraArgs& a, std::ostream& out) {
    Report r = started("algebra");
    r.add_provenance("dim", std::to_string(a.dim));
    r.add_provenance("op", a.op);
    r.add_provenance("lhs", a.lhs);
    const bool binary = a.op != "norm" && a.op != "hodge";
    if (binary && a.rhs.empty()) throw InvalidArgument("--op " + a.op + " needs --rhs");
    if (!binary && !a.rhs.empty()) throw InvalidArgument("--op " + a.op + " takes no --rhs");
    if (binary) r.add_provenance("rhs", a.rhs);

    const GradedElement u = parse_element(a.lhs, a.dim);
    auto element_rows = [&](const GradedElement& e) {
        r.add_text("result", to_string(e));
        r.add_real("result.grade", e.grade());
        r.add_real("result.norm", norm(e));
    };
    if (a.op == "norm") {
        r.add_real("result", norm(u));
    } else if (a.op == "hodge") {
        element_rows(hodge_dual(u));
    } else {
        const GradedElement v = parse_element(a.rhs, a.dim);
        if (a.op == "wedge") element_rows(wedge(u, v));
        else if (a.op == "add") element_rows(u + v);
        else if (a.op == "dot") r.add_real("result", scalar_product(u, v));
        else if (a.op == "measure") r.add_real("result", normalized_measure(u, v));
        else if (a.op == "pair") r.add_real("result", pair_form_vector(u, v));
    }
    emit(out, a.out, r.to_csv());
    return kExitOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeArgs {
    std::string field;
    std::string box;
    int grid = kDefaultGrid;
    double h = kDefaultStep;
    double tol = kDefaultTolerance;
    std::string out;
    std::string table;
};

int run_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const FlowField field = parse_flow_spec(read_text_file(a.field));
    const Region region = unit_or_box(field.dim(), a.box, a.grid);
    const Tolerances tol{a.tol, a.tol, a.tol, a.tol};
    const CharacteristicReport c = classify_flow(field, region, tol, a.h);

    Report r = started("analyze");
    r.add_provenance("field", a.field);
    r.add_provenance("box", a.box.empty() ? "unit" : a.box);
    r.add_provenance("grid", std::to_string(a.grid));
    r.add_provenance("h", format_real(a.h));
    r.add_provenance("tol", format_real(a.tol));
    r.add_real("dim", field.dim());
    r.add_real("residual.skew", c.skew);
    r.add_real("residual.divergence", c.divergence);
    r.add_real("residual.path_independence", c.path_independence);
    r.add_real("residual.harmonicity", c.harmonicity);
    r.add_real("tolerance.skew", c.tolerances.skew);
    r.add_real("tolerance.divergence", c.tolerances.divergence);
    r.add_real("tolerance.path_independence", c.tolerances.path_independence);
    r.add_real("tolerance.harmonicity", c.tolerances.harmonicity);
    r.add_verdict("verdict.skew_closed", c.skew_closed, "tolerance.skew");
    r.add_verdict("verdict.direct_closed", c.direct_closed, "tolerance.divergence");
    r.add_verdict("verdict.laminar", c.laminar, "tolerance.path_independence");
    r.add_verdict("verdict.harmonic", c.harmonic, "tolerance.harmonicity");
    r.add_text("gauge.origin", join(c.gauge_origin));
    r.add_real("gauge.constant", field.potential() ? field.potential_at(c.gauge_origin) : 0.0);

    std::string table = "criterion,residual,tolerance,verdict\n";
    auto line = [&](const char* name, double residual, double t, bool pass) {
        table += std::string(name) + ',' + format_real(residual) + ',' + format_real(t) + ',' + (pass ? "pass" : "fail") + '\n';
    };
    line("skew_closed", c.skew, c.tolerances.skew, c.skew_closed);
    line("direct_closed", c.divergence, c.tolerances.divergence, c.direct_closed);
    line("laminar", c.path_independence, c.tolerances.path_independence, c.laminar);
    line("harmonic", c.harmonicity, c.tolerances.harmonicity, c.harmonic);

    emit(out, a.out, r.to_csv());
    if (a.table.empty()) out << '\n' << table;
    else write_text_file(a.table, table);
    return kExitOk;
}

// --- circulate / flux ------------------------------------------------------

struct CirculateArgs {
    std::string field;
    std::string curve;
    int segments = 0;
    double h = kDefaultStep;
    std::string out;
};

int run_circulate(const CirculateArgs& a, std::ostream& out) {
    const FlowField field = parse_flow_spec(read_text_file(a.field));
    CurvePath curve = parse_curve_spec(read_text_file(a.curve));
    if (a.segments > 0) curve = curve.with_segments(a.segments);
    if (curve.dim() != field.dim()) throw DimensionError("curve and field dimensions differ");
    const double value = circulation(field, curve, a.h);

    Report r = started("circulate");
    r.add_provenance("field", a.field);
    r.add_provenance("curve", a.curve);
    r.add_provenance("h", format_real(a.h));
    r.add_real("segments", curve.segments());
    r.add_real("circulation", value);
    emit(out, a.out, r.to_csv());
    return kExitOk;
}

struct FluxArgs {
    std::string field;
    std::string surface;
    int grid = 0;
    double h = kDefaultStep;
    bool absolute = false;
    std::string out;
};

int run_flux(const FluxArgs& a, std::ostream& out) {
    const FlowField field = parse_flow_spec(read_text_file(a.field));
    SurfaceSpec spec = parse_surface_spec(read_text_file(a.surface));

    Report r = started("flux");
    r.add_provenance("field", a.field);
    r.add_provenance("surface", a.surface);
    r.add_provenance("h", format_real(a.h));
    r.add_provenance("abs", a.absolute ? "true" : "false");

    auto fill = [&](const auto& s, auto&&... step) {
        if (s.dim() != field.dim()) throw DimensionError("surface and field dimensions differ");
        r.add_real("flux", integral_measure(field, s, step...));
        r.add_real("area", integral_instrument_norm(s, step...));
        try {
            r.add_real("normalized_measure", integral_normalized_measure(field, s, step...));
        } catch (const DomainError& e) {
            r.add_text("normalized_measure", std::string("undefined: ") + one_line(e.what()));
        }
        if (a.absolute) r.add_real("absolute_flux", absolute_flux(field, s, step...));
    };
    if (auto* patch = std::get_if<SurfacePatch>(&spec)) {
        if (a.grid > 0) *patch = patch->with_cells(std::vector<int>(patch->parameters(), a.grid));
        r.add_text("kind", "patch");
        fill(*patch, a.h);
    } else {
        auto& box = std::get<BoxInstrument>(spec);
        if (a.grid > 0) box = box.with_cells(a.grid);
        r.add_text("kind", "box");
        fill(box);
    }
    emit(out, a.out, r.to_csv());
    return kExitOk;
}

// --- verify ----------------------------------------------------------------

struct VerifyArgs {
    std::string suite;
    int trials = 100;
    std::uint64_t seed = 0;
    double tol = 1e-6;
    std::string out;
    std::string table;
};

int run_verify(const VerifyArgs& a, std::ostream& out) {
    SuiteOptions o;
    o.trials = a.trials;
    o.seed = a.seed;
    o.tolerance = a.tol;
    VerdictTable t;
    if (a.suite == "stokes") t = verify_stokes_link(o);
    else if (a.suite == "gauss") t = verify_gauss_link(o);
    else t = verify_harmonic_link(o);

    Report r = started("verify");
    r.add_provenance("suite", a.suite);
    r.add_provenance("trials", std::to_string(a.trials));
    r.add_provenance("seed", std::to_string(a.seed));
    r.add_provenance("tol", format_real(a.tol));
    r.add_real("tolerance", t.tolerance);
    r.add_real("escape", t.escape);
    r.add_real("trials", static_cast<double>(t.rows.size()));
    r.add_real("agreements", t.agreements());
    r.add_verdict("verdict.all_agree", t.all_agree(), "tolerance");

    emit(out, a.out, r.to_csv());
    const std::string table = verdict_table_csv(t);
    if (a.table.empty()) out << '\n' << table;
    else write_text_file(a.table, table);
    return t.all_agree() ? kExitOk : kExitVerificationFailed;
}

// --- laplace ---------------------------------------------------------------

struct LaplaceArgs {
    std::string boundary;
    int grid = 33;
    double tol = 1e-8;
    int max_sweeps = 500000;
    double omega = 1.0;
    std::string out;
    std::string history;
};

int run_laplace(const LaplaceArgs& a, std::ostream& out) {
    const BoundarySpec spec = parse_boundary_spec(read_text_file(a.boundary));
    if (spec.dim != 2 && spec.dim != 3) throw DimensionError("laplace supports dim 2 or 3");
    const Region region(spec.lo, spec.hi, std::vector<int>(spec.dim, a.grid));
    const Program g(spec.phi);
    DirichletProblem problem = DirichletProblem::from_function(region, [&](std::span<const double> x) {
        return g(Bindings{.x = x});
    });
    problem.tolerance = a.tol;
    problem.max_sweeps = a.max_sweeps;
    problem.omega = a.omega;
    const LaplaceSolution s = solve_laplace_dirichlet(problem);

    double b_lo = INFINITY, b_hi = -INFINITY, i_lo = INFINITY, i_hi = -INFINITY, deviation = 0.0;
    for (std::size_t i = 0; i < region.node_count(); ++i) {
        const double v = s.phi[i];
        if (region.on_boundary(i)) {
            b_lo = std::min(b_lo, v);
            b_hi = std::max(b_hi, v);
        } else {
            i_lo = std::min(i_lo, v);
            i_hi = std::max(i_hi, v);
        }
        const auto x = region.node(i);
        deviation = std::max(deviation, std::abs(v - g(Bindings{.x = x})));
    }
    const bool has_interior = i_lo <= i_hi;

    Report r = started("laplace");
    r.add_provenance("boundary", a.boundary);
    r.add_provenance("grid", std::to_string(a.grid));
    r.add_provenance("tol", format_real(a.tol));
    r.add_provenance("omega", format_real(a.omega));
    r.add_real("dim", spec.dim);
    r.add_real("sweeps", s.sweeps);
    r.add_real("residual", s.residual);
    r.add_real("tolerance.residual", a.tol);
    r.add_verdict("verdict.converged", s.residual <= a.tol, "tolerance.residual");
    r.add_real("energy", dirichlet_energy(s.phi));
    r.add_real("boundary.min", b_lo);
    r.add_real("boundary.max", b_hi);
    if (has_interior) {
        r.add_real("interior.min", i_lo);
        r.add_real("interior.max", i_hi);
    }
    r.add_real("tolerance.maximum_principle", 0.0);
    r.add_verdict("verdict.maximum_principle", !has_interior || (i_lo >= b_lo && i_hi <= b_hi), "tolerance.maximum_principle");
    r.add_real("max_deviation_from_boundary_expression", deviation);
    emit(out, a.out, r.to_csv());

    if (!a.history.empty()) {
        std::string csv = "sweep,residual\n";
        for (std::size_t k = 0; k < s.residual_history.size(); ++k) {
            csv += std::to_string(k) + ',' + format_real(s.residual_history[k]) + '\n';
        }
        write_text_file(a.history, csv);
    }
    return kExitOk;
}

// --- minsurf ---------------------------------------------------------------

struct MinsurfArgs {
    std::string boundary;
    int grid = 32;
    double tol = 1e-8;
    int iters = 500000;
    double omega = 1.0;
    std::vector<double> arcs{0.0, 0.25, 0.5, 0.75};
    std::vector<double> view{0.0, 90.0};
    std::string out;
    std::string history;
    std::string svg;
};

int run_minsurf(const MinsurfArgs& a, std::ostream& out) {
    ArcSplit split;
    std::copy(a.arcs.begin(), a.arcs.end(), split.starts.begin());
    const BoundaryLoop loop(parse_curve_spec(read_text_file(a.boundary)), split);
    RelaxOptions o;
    o.cells = a.grid;
    o.tolerance = a.tol;
    o.max_sweeps = a.iters;
    o.omega = a.omega;
    o.record_history = !a.history.empty();
    const RelaxResult res = relax_harmonic_surface(loop, o);
    const SurfaceGrid& s = res.surface;

    bool hull = true;
    const int m = s.cells();
    for (int j = 0; j < s.ambient_dim(); ++j) {
        double lo = INFINITY, hi = -INFINITY;
        for (int k = 0; k <= m; ++k) {
            for (int i = 0; i <= m; ++i) {
                if (s.is_boundary(i, k)) lo = std::min(lo, s.at(j, i, k)), hi = std::max(hi, s.at(j, i, k));
            }
        }
        for (int k = 1; k < m; ++k) {
            for (int i = 1; i < m; ++i) hull = hull && s.at(j, i, k) >= lo && s.at(j, i, k) <= hi;
        }
    }

    Report r = started("minsurf");
    r.add_provenance("boundary", a.boundary);
    r.add_provenance("grid", std::to_string(a.grid));
    r.add_provenance("tol", format_real(a.tol));
    r.add_provenance("iters", std::to_string(a.iters));
    r.add_provenance("omega", format_real(a.omega));
    r.add_provenance("arcs", join(a.arcs));
    r.add_real("dim", s.ambient_dim());
    r.add_real("sweeps", res.sweeps);
    r.add_real("residual", res.residual);
    r.add_real("tolerance.residual", a.tol);
    r.add_verdict("verdict.converged", res.residual <= a.tol, "tolerance.residual");
    r.add_real("area", surface_area(s));
    r.add_real("energy", vector_dirichlet_energy(s));
    r.add_real("tolerance.maximum_principle", 0.0);
    r.add_verdict("verdict.maximum_principle", hull, "tolerance.maximum_principle");
    emit(out, a.out, r.to_csv());

    if (!a.history.empty()) {
        std::string csv = "sweep,area,energy,residual\n";
        for (const auto& h : res.history) {
            csv += std::to_string(h.sweep) + ',' + format_real(h.area) + ',' + format_real(h.energy) + ',' +
                   format_real(h.residual) + '\n';
        }
        write_text_file(a.history, csv);
    }
    if (!a.svg.empty()) write_text_file(a.svg, surface_svg(s, {a.view[0], a.view[1]}));
    return kExitOk;
}

// --- plot ------------------------------------------------------------------

struct PlotArgs {
    std::string field;
    std::string surface;
    std::vector<double> window{-1.0, 1.0, -1.0, 1.0};
    int density = 12;
    int grid = 16;
    std::vector<double> view{0.0, 90.0};
    std::string out;
};

int run_plot(const PlotArgs& a, std::ostream& out) {
    if (a.field.empty() == a.surface.empty()) throw InvalidArgument("plot needs exactly one of --field or --surface");
    std::string svg;
    if (!a.field.empty()) {
        const FlowField field = parse_flow_spec(read_text_file(a.field));
        svg = field_svg(field, PlotWindow{a.window[0], a.window[1], a.window[2], a.window[3]}, a.density);
    } else {
        SurfaceSpec spec = parse_surface_spec(read_text_file(a.surface));
        const auto* patch = std::get_if<SurfacePatch>(&spec);
        if (!patch) throw InvalidArgument("plot --surface needs a parametric patch, not a box");
        if (patch->dim() != 3) throw DimensionError("plot --surface needs a surface in 3 dimensions");
        svg = surface_svg(sample_surface(*patch, a.grid), {a.view[0], a.view[1]});
    }
    emit(out, a.out, svg);
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Flow calculus toolkit: exterior algebra, flow characteristics and Laplace relaxation.", "flowcalc"};
    app.set_help_flag("--help", "Print this help message and exit");
    app.set_version_flag("--version", FLOWCALC_VERSION);
    app.require_subcommand(1);

    AlgebraArgs algebra_args;
    auto* algebra = app.add_subcommand("algebra", "Exterior algebra on basis-blade expressions");
    algebra->add_option("--dim", algebra_args.dim, "Ambient dimension")->check(CLI::Range(1, kMaxExteriorDim))->capture_default_str();
    algebra->add_option("--op", algebra_args.op, "Operation")
        ->required()
        ->check(CLI::IsMember({"wedge", "add", "dot", "norm", "measure", "hodge", "pair"}));
    algebra->add_option("--lhs", algebra_args.lhs, "Left operand, e.g. \"2*e12 - e13\" or \"dx1\"")->required();
    algebra->add_option("--rhs", algebra_args.rhs, "Right operand (binary operations)");
    algebra->add_option("--out", algebra_args.out, "Report CSV path (default: standard output)");

    AnalyzeArgs analyze_args;
    auto* analyze = app.add_subcommand("analyze", "Skew, direct, laminar and harmonic characteristics of a flow");
    analyze->add_option("--field", analyze_args.field, "Flow file")->required();
    analyze->add_option("--box", analyze_args.box, "Region \"[a1,b1]x...\" (default: unit box)");
    analyze->add_option("--grid", analyze_args.grid, "Lattice nodes per axis")->check(CLI::Range(3, 100000))->capture_default_str();
    analyze->add_option("--h", analyze_args.h, "Difference step")->check(CLI::PositiveNumber)->capture_default_str();
    analyze->add_option("--tol", analyze_args.tol, "Verdict tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    analyze->add_option("--out", analyze_args.out, "Report CSV path (default: standard output)");
    analyze->add_option("--table", analyze_args.table, "Verdict table CSV path (default: after the report)");

    CirculateArgs circulate_args;
    auto* circulate = app.add_subcommand("circulate", "Circulation of a flow along a closed curve");
    circulate->add_option("--field", circulate_args.field, "Flow file")->required();
    circulate->add_option("--curve", circulate_args.curve, "Curve file")->required();
    circulate->add_option("--segments", circulate_args.segments, "Quadrature segments (default: from the curve file)")
        ->check(CLI::Range(3, 1 << 30));
    circulate->add_option("--h", circulate_args.h, "Tangent difference step")->check(CLI::PositiveNumber)->capture_default_str();
    circulate->add_option("--out", circulate_args.out, "Report CSV path (default: standard output)");

    FluxArgs flux_args;
    auto* flux = app.add_subcommand("flux", "Flux, area and normalized measure over a surface or box");
    flux->add_option("--field", flux_args.field, "Flow file")->required();
    flux->add_option("--surface", flux_args.surface, "Surface file")->required();
    flux->add_option("--grid", flux_args.grid, "Cells per parameter (default: from the surface file)")->check(CLI::Range(1, 1 << 20));
    flux->add_option("--h", flux_args.h, "Tangent difference step")->check(CLI::PositiveNumber)->capture_default_str();
    flux->add_flag("--abs", flux_args.absolute, "Also report the integral of |<a, nu>|");
    flux->add_option("--out", flux_args.out, "Report CSV path (default: standard output)");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify", "Seeded agreement suites between integral and differential criteria");
    verify->add_option("--suite", verify_args.suite, "stokes, gauss or harmonic")
        ->required()
        ->check(CLI::IsMember({"stokes", "gauss", "harmonic"}));
    verify->add_option("--trials", verify_args.trials, "Number of random fields")->check(CLI::Range(1, 1000000))->capture_default_str();
    verify->add_option("--seed", verify_args.seed, "Random seed")->capture_default_str();
    verify->add_option("--tol", verify_args.tol, "Agreement tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    verify->add_option("--out", verify_args.out, "Report CSV path (default: standard output)");
    verify->add_option("--table", verify_args.table, "Verdict table CSV path (default: after the report)");

    LaplaceArgs laplace_args;
    auto* laplace = app.add_subcommand("laplace", "Dirichlet problem for the discrete Laplace equation");
    laplace->add_option("--boundary", laplace_args.boundary, "Boundary-data file")->required();
    laplace->add_option("--grid", laplace_args.grid, "Nodes per axis")->check(CLI::Range(3, 100000))->capture_default_str();
    laplace->add_option("--tol", laplace_args.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    laplace->add_option("--max-sweeps", laplace_args.max_sweeps, "Sweep limit")->check(CLI::PositiveNumber)->capture_default_str();
    laplace->add_option("--omega", laplace_args.omega, "Relaxation factor in (0, 2)")->check(CLI::Range(0.0, 2.0))->capture_default_str();
    laplace->add_option("--out", laplace_args.out, "Report CSV path (default: standard output)");
    laplace->add_option("--history", laplace_args.history, "Residual history CSV path");

    MinsurfArgs minsurf_args;
    auto* minsurf = app.add_subcommand("minsurf", "Harmonic relaxation of a surface spanning a closed curve");
    minsurf->add_option("--boundary", minsurf_args.boundary, "Closed curve file")->required();
    minsurf->add_option("--grid", minsurf_args.grid, "Cells per side M")->check(CLI::Range(3, 100000))->capture_default_str();
    minsurf->add_option("--tol", minsurf_args.tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
    minsurf->add_option("--iters", minsurf_args.iters, "Sweep limit")->check(CLI::PositiveNumber)->capture_default_str();
    minsurf->add_option("--omega", minsurf_args.omega, "Relaxation factor in (0, 2)")->check(CLI::Range(0.0, 2.0))->capture_default_str();
    minsurf->add_option("--arcs", minsurf_args.arcs, "Curve parameters where the four sides start")
        ->delimiter(',')
        ->expected(4);
    minsurf->add_option("--view", minsurf_args.view, "Wireframe azimuth,elevation in degrees")->delimiter(',')->expected(2);
    minsurf->add_option("--out", minsurf_args.out, "Report CSV path (default: standard output)");
    minsurf->add_option("--history", minsurf_args.history, "Per-sweep area/energy/residual CSV path");
    minsurf->add_option("--svg", minsurf_args.svg, "Wireframe SVG path");

    PlotArgs plot_args;
    auto* plot = app.add_subcommand("plot", "SVG arrow plot of a planar flow or wireframe of a surface patch");
    plot->add_option("--field", plot_args.field, "Flow file (dim 2)");
    plot->add_option("--surface", plot_args.surface, "Surface file (dim 3 patch)");
    plot->add_option("--window", plot_args.window, "x_lo,x_hi,y_lo,y_hi")->delimiter(',')->expected(4);
    plot->add_option("--density", plot_args.density, "Arrows per axis")->check(CLI::Range(1, 1000))->capture_default_str();
    plot->add_option("--grid", plot_args.grid, "Surface cells per side")->check(CLI::Range(1, 10000))->capture_default_str();
    plot->add_option("--view", plot_args.view, "Wireframe azimuth,elevation in degrees")->delimiter(',')->expected(2);
    plot->add_option("--out", plot_args.out, "SVG path (default: standard output)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        std::string where = "flowcalc";
        for (const auto* sub : app.get_subcommands()) where += " " + sub->get_name();
        err << where << ": " << one_line(e.what()) << " (see '" << where << " --help')\n";
        return kExitUsage;
    }

    try {
        if (algebra->parsed()) return run_algebra(algebra_args, out);
        if (analyze->parsed()) return run_analyze(analyze_args, out);
        if (circulate->parsed()) return run_circulate(circulate_args, out);
        if (flux->parsed()) return run_flux(flux_args, out);
        if (verify->parsed()) return run_verify(verify_args, out);
        if (laplace->parsed()) return run_laplace(laplace_args, out);
        if (minsurf->parsed()) return run_minsurf(minsurf_args, out);
        return run_plot(plot_args, out);
    } catch (const std::exception& e) {
        err << "flowcalc: error: " << one_line(e.what()) << '\n';
        return kExitUsage;
    }
}

} // namespace flowcalc
