#pragma once

// Readers for the curve, surface and boundary-data text formats. The flow
// format lives next to FlowField in field.hpp.

#include "flowcalc/expr.hpp"
#include "flowcalc/integral.hpp"
#include "flowcalc/lattice.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace flowcalc {

/// One `key(args) = value` statement of an input file.
struct Statement {
    std::string key;
    std::string args;   // text between parentheses after the key, spaces removed
    bool has_args = false;
    std::string value;
    int line = 1;
    int key_column = 1;
    int value_column = 1;
};

/// Splits on newlines and ';', strips `#` comments and blank statements.
std::vector<Statement> split_statements(std::string_view text);

/// `dim = n`, `closed = true|false`, `x1(t) = ...` ..., optional `segments = N`.
CurvePath parse_curve_spec(std::string_view text);

/// Parametric `x1(u1,...,u<n-1>) = ...` surface or `box = [a,b]x...` boundary.
using SurfaceSpec = std::variant<SurfacePatch, BoxInstrument>;
SurfaceSpec parse_surface_spec(std::string_view text);

/// Dirichlet boundary data: `dim = n`, `phi = ...`, optional `box = ...`
/// (defaults to the unit box).
struct BoundarySpec {
    int dim = 0;
    Expr phi;
    std::vector<double> lo;
    std::vector<double> hi;
};
BoundarySpec parse_boundary_spec(std::string_view text);

/// "[a1,b1]x[a2,b2]x..." with constant-expression bounds, as (lo, hi).
std::pair<std::vector<double>, std::vector<double>> parse_box_text(std::string_view text);

std::string read_text_file(const std::string& path);

} // namespace flowcalc
