#include "flowcalc/error.hpp"
#include "flowcalc/input_files.hpp"
#include "flowcalc/min_surface.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <numbers>

using namespace flowcalc;

namespace {

// Unit square perimeter, one edge per quarter of the parameter.
const char* kSquare = "(abs(4*t)-abs(4*t-1)+1)/2 - (abs(4*t-2)-abs(4*t-3)+1)/2";
const char* kSquareY = "(abs(4*t-1)-abs(4*t-2)+1)/2 - (abs(4*t-3)-abs(4*t-4)+1)/2";

CurvePath square_loop(const std::string& z = "0") {
    const std::string sx = std::string("(") + kSquare + ")";
    const std::string sy = std::string("(") + kSquareY + ")";
    const std::string x = "2*" + sx + "-1";
    const std::string y = "2*" + sy + "-1";
    std::string zz = z;
    for (auto [name, val] : {std::pair{std::string("X"), x}, std::pair{std::string("Y"), y}}) {
        for (std::size_t p; (p = zz.find(name)) != std::string::npos;) zz.replace(p, 1, "(" + val + ")");
    }
    return parse_curve_spec("dim=3; closed=true; x1(t)=" + x + "; x2(t)=" + y + "; x3(t)=" + zz);
}

RelaxOptions cells(int m) {
    RelaxOptions o;
    o.cells = m;
    return o;
}

SurfacePatch patch(const std::string& x1, const std::string& x2, const std::string& x3, int n = 8) {
    const auto spec = parse_surface_spec("dim=3; x1(u1,u2)=" + x1 + "; x2(u1,u2)=" + x2 + "; x3(u1,u2)=" + x3);
    return std::get<SurfacePatch>(spec).with_cells({n, n});
}

SurfaceGrid transformed(const SurfaceGrid& g, const double rot[3][3], const double shift[3]) {
    SurfaceGrid out(3, g.cells());
    for (int k = 0; k <= g.cells(); ++k) {
        for (int i = 0; i <= g.cells(); ++i) {
            const auto p = g.point(i, k);
            for (int r = 0; r < 3; ++r) out.at(r, i, k) = rot[r][0] * p[0] + rot[r][1] * p[1] + rot[r][2] * p[2] + shift[r];
        }
    }
    return out;
}

} // namespace

TEST_SUITE("min_surface") {

TEST_CASE("planar square loop relaxes to the flat square") {
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(square_loop()), cells(16));
    CHECK(r.residual <= 1e-8);
    CHECK(std::abs(surface_area(r.surface) - 4.0) <= 1e-9);
    for (double z : r.surface.coordinate(2)) CHECK(z == 0.0);
}

TEST_CASE("saddle loop: harmonic coordinates, residual and maximum principle") {
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(square_loop("X^2-Y^2")), cells(24));
    CHECK(r.residual <= 1e-8);
    CHECK(surface_laplace_residual(r.surface) <= 1e-8);
    const SurfaceGrid& s = r.surface;
    for (int j = 0; j < 3; ++j) {
        double lo = INFINITY, hi = -INFINITY;
        for (int k = 0; k <= s.cells(); ++k) {
            for (int i = 0; i <= s.cells(); ++i) {
                if (s.is_boundary(i, k)) lo = std::min(lo, s.at(j, i, k)), hi = std::max(hi, s.at(j, i, k));
            }
        }
        for (int k = 1; k < s.cells(); ++k) {
            for (int i = 1; i < s.cells(); ++i) {
                CHECK(s.at(j, i, k) >= lo);
                CHECK(s.at(j, i, k) <= hi);
            }
        }
    }
    // The graph z = x^2 - y^2 is discrete harmonic in the parameters.
    for (int k = 0; k <= s.cells(); ++k) {
        for (int i = 0; i <= s.cells(); ++i) {
            const auto p = s.point(i, k);
            CHECK(std::abs(p[2] - (p[0] * p[0] - p[1] * p[1])) <= 1e-7);
        }
    }
}

TEST_CASE("constant loop spans zero area") {
    const auto loop = parse_curve_spec("dim=3; closed=true; x1(t)=1; x2(t)=2; x3(t)=3");
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(loop), cells(8));
    CHECK(surface_area(r.surface) == 0.0);
    CHECK(vector_dirichlet_energy(r.surface) == 0.0);
}

TEST_CASE("area of sampled patches") {
    CHECK(std::abs(surface_area(sample_surface(patch("u1", "u2", "u1"), 8)) - std::sqrt(2.0)) <= 1e-12);
    const SurfacePatch quarter = patch("cos(pi/2*u1)", "sin(pi/2*u1)", "u2");
    CHECK(std::abs(surface_area(sample_surface(quarter, 256)) - std::numbers::pi / 2) <= 1e-4);
}

TEST_CASE("affine patches have exact area") {
    // t_u = (2,-1,0.5), t_v = (1,1,0); |t_u ^ t_v|^2 = |t_u|^2 |t_v|^2 - (t_u.t_v)^2.
    const double area = std::sqrt(5.25 * 2.0 - 1.0);
    for (int m : {1, 3, 7}) CHECK(std::abs(surface_area(sample_surface(patch("2*u1+u2", "u2-u1", "3+u1*0.5"), m)) - area) <= 1e-12);
}

TEST_CASE("area converges at second order") {
    const SurfacePatch cap = patch("sin(u1)*cos(u2)", "sin(u1)*sin(u2)", "cos(u1)");
    const double exact = 1.0 - std::cos(1.0);
    std::vector<double> err;
    for (int m : {16, 32, 64}) err.push_back(std::abs(surface_area(sample_surface(cap, m)) - exact));
    for (std::size_t i = 0; i + 1 < err.size(); ++i) {
        const double order = std::log2(err[i] / err[i + 1]);
        CHECK(order >= 1.8);
        CHECK(order <= 2.2);
    }
}

TEST_CASE("area is invariant under rigid motions") {
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(square_loop("0.5*X*Y + 0.2*X^3")), cells(16));
    const double a = 0.3, b = -1.1;
    const double rot[3][3] = {{std::cos(a), -std::sin(a), 0.0}, {std::sin(a) * std::cos(b), std::cos(a) * std::cos(b), -std::sin(b)},
                              {std::sin(a) * std::sin(b), std::cos(a) * std::sin(b), std::cos(b)}};
    const double shift[3] = {3.0, -7.5, 0.25};
    const double before = surface_area(r.surface);
    CHECK(std::abs(surface_area(transformed(r.surface, rot, shift)) - before) <= 1e-10 * before);
    CHECK(std::abs(vector_dirichlet_energy(transformed(r.surface, rot, shift)) - vector_dirichlet_energy(r.surface)) <=
          1e-10 * vector_dirichlet_energy(r.surface));
}

TEST_CASE("property: area never exceeds half the Dirichlet energy") {
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 2 + trial % 7;
        SurfaceGrid g(3 + trial % 2, m);
        for (int j = 0; j < g.ambient_dim(); ++j) {
            for (int k = 0; k <= m; ++k) {
                for (int i = 0; i <= m; ++i) g.at(j, i, k) = u(gen);
            }
        }
        CHECK(surface_area(g) <= 0.5 * vector_dirichlet_energy(g) * (1.0 + 1e-12));
    }
}

TEST_CASE("relaxation history: energy never increases, area bounded by energy") {
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(square_loop("0.5*X*Y + 0.2*X^3")), cells(16));
    REQUIRE(r.history.size() == static_cast<std::size_t>(r.sweeps) + 1);
    CHECK(r.history.front().sweep == 0);
    for (std::size_t k = 1; k < r.history.size(); ++k) {
        CHECK(r.history[k].energy <= r.history[k - 1].energy * (1.0 + 1e-13));
        CHECK(r.history[k].area <= 0.5 * r.history[k].energy * (1.0 + 1e-12));
    }
    CHECK(r.history.back().residual == r.residual);
}

TEST_CASE("area probes") {
    const RelaxResult flat = relax_harmonic_surface(BoundaryLoop(square_loop()), cells(16));
    const AreaProbeStats big = area_variation_probe(flat.surface, 2e-3, 10, 7);
    const AreaProbeStats small = area_variation_probe(flat.surface, 1e-3, 10, 7);
    REQUIRE(big.normal_area_delta.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) {
        CHECK(big.normal_area_delta[i] > 0.0);
        CHECK(big.energy_delta[i] > 0.0);
        const double ratio = big.normal_area_delta[i] / small.normal_area_delta[i];
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
    }

    const RelaxResult saddle = relax_harmonic_surface(BoundaryLoop(square_loop("X^2-Y^2")), cells(16));
    const AreaProbeStats s = area_variation_probe(saddle.surface, 1e-3, 20, 11);
    for (double d : s.energy_delta) CHECK(d > 0.0);
}

TEST_CASE("four-dimensional loops") {
    const auto loop = parse_curve_spec(
        "dim=4; closed=true; x1(t)=cos(2*pi*t); x2(t)=sin(2*pi*t); x3(t)=0.3*cos(4*pi*t); x4(t)=0.3*sin(4*pi*t)");
    const RelaxResult r = relax_harmonic_surface(BoundaryLoop(loop), cells(16));
    CHECK(r.surface.ambient_dim() == 4);
    CHECK(r.residual <= 1e-8);
    CHECK(surface_area(r.surface) > 0.0);
    const AreaProbeStats p = area_variation_probe(r.surface, 1e-3, 5, 2);
    CHECK(p.normal_area_delta.size() == 5);
    for (double d : p.energy_delta) CHECK(d > 0.0);
}

TEST_CASE("argument errors") {
    const CurvePath open = parse_curve_spec("dim=3; closed=false; x1(t)=t; x2(t)=0; x3(t)=0");
    CHECK_THROWS_AS(BoundaryLoop{open}, InvalidArgument);
    const CurvePath flat2 = parse_curve_spec("dim=2; closed=true; x1(t)=cos(2*pi*t); x2(t)=sin(2*pi*t)");
    CHECK_THROWS_AS(BoundaryLoop{flat2}, DimensionError);
    CHECK_THROWS_AS(BoundaryLoop(square_loop(), ArcSplit{{0.0, 0.5, 0.25, 0.75}}), InvalidArgument);
    RelaxOptions bad = cells(8);
    bad.omega = 2.0;
    CHECK_THROWS_AS(relax_harmonic_surface(BoundaryLoop(square_loop()), bad), InvalidArgument);
    RelaxOptions few = cells(16);
    few.max_sweeps = 3;
    CHECK_THROWS_AS(relax_harmonic_surface(BoundaryLoop(square_loop("X*Y*X")), few), NonConvergenceError);
}

}
