#include "flowcalc/input_files.hpp"

#include "flowcalc/error.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

namespace flowcalc {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim_left(std::string_view s, int& column) {
    while (!s.empty() && is_space(s.front())) {
        s.remove_prefix(1);
        ++column;
    }
    return s;
}

std::string_view trim_right(std::string_view s) {
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

Statement parse_statement(std::string_view piece, int line, int column) {
    const std::size_t eq = piece.find('=');
    int key_column = column;
    std::string_view lhs = trim_left(piece.substr(0, eq == std::string_view::npos ? piece.size() : eq), key_column);
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line, key_column);
    lhs = trim_right(lhs);
    Statement s;
    s.line = line;
    s.key_column = key_column;
    std::size_t name_end = 0;
    while (name_end < lhs.size() && (std::isalnum(static_cast<unsigned char>(lhs[name_end])) || lhs[name_end] == '_')) {
        ++name_end;
    }
    if (name_end == 0) throw ParseError("missing key before '='", line, key_column);
    s.key = std::string(lhs.substr(0, name_end));
    std::string_view rest = lhs.substr(name_end);
    int rest_column = key_column + static_cast<int>(name_end);
    rest = trim_left(rest, rest_column);
    if (!rest.empty()) {
        if (rest.front() != '(' || rest.back() != ')') throw ParseError("malformed key '" + std::string(lhs) + "'", line, rest_column);
        s.has_args = true;
        for (char c : rest.substr(1, rest.size() - 2)) {
            if (!is_space(c)) s.args += c;
        }
    }
    int value_column = column + static_cast<int>(eq) + 1;
    std::string_view value = trim_right(trim_left(piece.substr(eq + 1), value_column));
    if (value.empty()) throw ParseError("missing value for '" + s.key + "'", line, value_column);
    s.value = std::string(value);
    s.value_column = value_column;
    return s;
}

int parse_int(const Statement& s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.value.data(), s.value.data() + s.value.size(), v);
    if (ec != std::errc() || ptr != s.value.data() + s.value.size()) {
        throw ParseError("'" + s.key + "' must be an integer", s.line, s.value_column);
    }
    return v;
}

bool parse_bool(const Statement& s) {
    if (s.value == "true") return true;
    if (s.value == "false") return false;
    throw ParseError("'" + s.key + "' must be true or false", s.line, s.value_column);
}

double parse_constant(std::string_view text, int line, int column) {
    const Expr e = parse_expression(text, Scope{.dim = 0, .allow_x = false}, line, column);
    return evaluate(e, {});
}

// "[a1,b1]x[a2,b2]x..." -> (lo, hi)
std::pair<std::vector<double>, std::vector<double>> parse_box(const Statement& s) {
    std::vector<double> lo, hi;
    const std::string& v = s.value;
    std::size_t i = 0;
    auto skip = [&] {
        while (i < v.size() && is_space(v[i])) ++i;
    };
    while (true) {
        skip();
        if (i >= v.size() || v[i] != '[') throw ParseError("expected '[' in box", s.line, s.value_column + static_cast<int>(i));
        const std::size_t close = v.find(']', i);
        if (close == std::string::npos) throw ParseError("unbalanced '[' in box", s.line, s.value_column + static_cast<int>(i));
        const std::size_t comma = v.find(',', i);
        if (comma == std::string::npos || comma > close) {
            throw ParseError("box interval needs 'lo,hi'", s.line, s.value_column + static_cast<int>(i));
        }
        const int col = s.value_column + static_cast<int>(i) + 1;
        const double a = parse_constant(std::string_view(v).substr(i + 1, comma - i - 1), s.line, col);
        const double b = parse_constant(std::string_view(v).substr(comma + 1, close - comma - 1), s.line,
                                        s.value_column + static_cast<int>(comma) + 1);
        if (!(a < b)) throw ParseError("box interval must have lo < hi", s.line, col);
        lo.push_back(a);
        hi.push_back(b);
        i = close + 1;
        skip();
        if (i >= v.size()) break;
        if (v[i] != 'x' && v[i] != 'X') throw ParseError("expected 'x' between box intervals", s.line, s.value_column + static_cast<int>(i));
        ++i;
    }
    return {lo, hi};
}

int find_dim(const std::vector<Statement>& statements) {
    const Statement* found = nullptr;
    for (const Statement& s : statements) {
        if (s.key != "dim") continue;
        if (found) throw ParseError("duplicate 'dim'", s.line, s.key_column);
        found = &s;
    }
    if (!found) throw ParseError("'dim' missing", 1, 1);
    const int dim = parse_int(*found);
    if (dim < 1) throw ParseError("'dim' must be at least 1", found->line, found->value_column);
    return dim;
}

// Coordinate key index: x1..xn, or x/y/z when dim <= 3. 0 if not a coordinate key.
int coordinate_index(const std::string& key, int dim) {
    if (dim <= 3) {
        if (key == "x") return 1;
        if (key == "y" && dim >= 2) return 2;
        if (key == "z" && dim >= 3) return 3;
    }
    if (key.size() < 2 || key.front() != 'x' || key[1] == '0') return 0;
    int index = 0;
    const auto [ptr, ec] = std::from_chars(key.data() + 1, key.data() + key.size(), index);
    if (ec != std::errc() || ptr != key.data() + key.size() || index > dim) return 0;
    return index;
}

void reject_duplicate(std::map<std::string, int>& seen, const Statement& s, const std::string& canonical) {
    if (seen.contains(canonical)) throw ParseError("duplicate '" + s.key + "'", s.line, s.key_column);
    seen[canonical] = s.line;
}

std::vector<Expr> ordered_coords(std::map<int, Expr>& coords, int dim, int last_line) {
    std::vector<Expr> out;
    for (int i = 1; i <= dim; ++i) {
        auto it = coords.find(i);
        if (it == coords.end()) throw ParseError("coordinate 'x" + std::to_string(i) + "' missing", last_line, 1);
        out.push_back(it->second);
    }
    return out;
}

} // namespace

std::pair<std::vector<double>, std::vector<double>> parse_box_text(std::string_view text) {
    Statement s;
    s.key = "box";
    s.value = std::string(text);
    return parse_box(s);
}

std::vector<Statement> split_statements(std::string_view text) {
    std::vector<Statement> out;
    int line = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view row = text.substr(start, end - start);
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (const std::size_t hash = row.find('#'); hash != std::string_view::npos) row = row.substr(0, hash);
        std::size_t piece_start = 0;
        while (piece_start <= row.size()) {
            std::size_t semi = row.find(';', piece_start);
            if (semi == std::string_view::npos) semi = row.size();
            const std::string_view piece = row.substr(piece_start, semi - piece_start);
            if (!trim_right(piece).empty()) {
                out.push_back(parse_statement(piece, line, static_cast<int>(piece_start) + 1));
            }
            piece_start = semi + 1;
        }
        ++line;
        start = end + 1;
    }
    return out;
}

CurvePath parse_curve_spec(std::string_view text) {
    const auto statements = split_statements(text);
    const int dim = find_dim(statements);
    std::optional<bool> closed;
    int segments = 4096;
    std::map<int, Expr> coords;
    std::map<std::string, int> seen;
    int last_line = 1;
    const Scope scope{.dim = dim, .allow_x = false, .allow_t = true};
    for (const Statement& s : statements) {
        last_line = s.line;
        if (s.key == "dim") continue;
        if (s.key == "closed") {
            reject_duplicate(seen, s, s.key);
            closed = parse_bool(s);
        } else if (s.key == "segments") {
            reject_duplicate(seen, s, s.key);
            segments = parse_int(s);
            if (segments < 3) throw ParseError("'segments' must be at least 3", s.line, s.value_column);
        } else if (const int index = coordinate_index(s.key, dim); index > 0) {
            if (s.has_args && s.args != "t") throw ParseError("curve coordinates take the single argument t", s.line, s.key_column);
            reject_duplicate(seen, s, "x" + std::to_string(index));
            coords.emplace(index, parse_expression(s.value, scope, s.line, s.value_column));
        } else {
            throw ParseError("unknown key '" + s.key + "'", s.line, s.key_column);
        }
    }
    if (!closed) throw ParseError("'closed' missing", last_line, 1);
    return CurvePath(dim, ordered_coords(coords, dim, last_line), *closed, segments);
}

SurfaceSpec parse_surface_spec(std::string_view text) {
    const auto statements = split_statements(text);
    const int dim = find_dim(statements);
    if (dim < 2) throw ParseError("surfaces need 'dim' >= 2", 1, 1);
    std::string expected_args;
    for (int k = 1; k < dim; ++k) expected_args += (k > 1 ? ",u" : "u") + std::to_string(k);

    bool closed = false;
    std::vector<int> cells;
    std::map<int, Expr> coords;
    std::optional<std::pair<std::vector<double>, std::vector<double>>> box;
    std::map<std::string, int> seen;
    int last_line = 1;
    const Scope scope{.dim = dim, .allow_x = false, .parameters = dim - 1};
    for (const Statement& s : statements) {
        last_line = s.line;
        if (s.key == "dim") continue;
        if (s.key == "closed") {
            reject_duplicate(seen, s, s.key);
            closed = parse_bool(s);
        } else if (s.key == "grid") {
            reject_duplicate(seen, s, s.key);
            std::stringstream ss(s.value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                Statement one = s;
                one.value = std::string(trim_right(trim_left(item, one.value_column)));
                cells.push_back(parse_int(one));
                if (cells.back() < 1) throw ParseError("'grid' entries must be positive", s.line, s.value_column);
            }
        } else if (s.key == "box") {
            reject_duplicate(seen, s, s.key);
            box = parse_box(s);
            if (static_cast<int>(box->first.size()) != dim) {
                throw ParseError("box needs " + std::to_string(dim) + " intervals", s.line, s.value_column);
            }
        } else if (const int index = coordinate_index(s.key, dim); index > 0) {
            if (s.has_args && s.args != expected_args) {
                throw ParseError("surface coordinates take the arguments (" + expected_args + ")", s.line, s.key_column);
            }
            reject_duplicate(seen, s, "x" + std::to_string(index));
            coords.emplace(index, parse_expression(s.value, scope, s.line, s.value_column));
        } else {
            throw ParseError("unknown key '" + s.key + "'", s.line, s.key_column);
        }
    }
    if (box) {
        if (!coords.empty()) throw ParseError("'box' cannot be combined with coordinate expressions", last_line, 1);
        std::vector<double> center, edges;
        for (int a = 0; a < dim; ++a) {
            center.push_back(0.5 * (box->first[a] + box->second[a]));
            edges.push_back(box->second[a] - box->first[a]);
        }
        const int per_axis = cells.empty() ? 16 : cells.front();
        return BoxInstrument(std::move(center), std::move(edges), per_axis);
    }
    if (cells.empty()) cells.assign(dim - 1, 64);
    if (cells.size() == 1 && dim > 2) cells.assign(dim - 1, cells.front());
    if (static_cast<int>(cells.size()) != dim - 1) {
        throw ParseError("'grid' needs 1 or " + std::to_string(dim - 1) + " entries", last_line, 1);
    }
    return SurfacePatch(dim, ordered_coords(coords, dim, last_line), std::move(cells), closed);
}

BoundarySpec parse_boundary_spec(std::string_view text) {
    const auto statements = split_statements(text);
    BoundarySpec spec;
    spec.dim = find_dim(statements);
    spec.lo.assign(spec.dim, 0.0);
    spec.hi.assign(spec.dim, 1.0);
    bool have_phi = false;
    std::map<std::string, int> seen;
    int last_line = 1;
    for (const Statement& s : statements) {
        last_line = s.line;
        if (s.key == "dim") continue;
        if (s.key == "phi") {
            reject_duplicate(seen, s, s.key);
            spec.phi = parse_expression(s.value, Scope{.dim = spec.dim}, s.line, s.value_column);
            have_phi = true;
        } else if (s.key == "box") {
            reject_duplicate(seen, s, s.key);
            auto [lo, hi] = parse_box(s);
            if (static_cast<int>(lo.size()) != spec.dim) {
                throw ParseError("box needs " + std::to_string(spec.dim) + " intervals", s.line, s.value_column);
            }
            spec.lo = std::move(lo);
            spec.hi = std::move(hi);
        } else {
            throw ParseError("unknown key '" + s.key + "'", s.line, s.key_column);
        }
    }
    if (!have_phi) throw ParseError("'phi' missing", last_line, 1);
    return spec;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

} // namespace flowcalc
