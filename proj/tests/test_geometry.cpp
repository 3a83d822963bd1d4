/// @file test_geometry.cpp
/// @brief Unit tests for level sets, quadrature rules, the background/active
///        mesh, and the marching-tetrahedra surface extraction.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "surfnsch/cut_geometry.hpp"
#include "surfnsch/level_set.hpp"
#include "surfnsch/mesh.hpp"
#include "surfnsch/quadrature.hpp"

using namespace surfnsch;

namespace {

constexpr double kPi = std::numbers::pi;

/// Half-space level set used to test the marching rule against exact areas:
/// a plane cut is reproduced exactly by piecewise-linear interpolation.
class PlaneLevelSet final : public LevelSet {
public:
    explicit PlaneLevelSet(double offset) : offset_(offset) {}
    double phi(const Vec3& x) const override { return x.z() - offset_; }
    Vec3 grad(const Vec3&) const override { return Vec3(0.0, 0.0, 1.0); }
    std::string name() const override { return "plane"; }

private:
    double offset_;
};

double monomial(const QuadRule& rule, int a, int b, int c, int d) {
    double s = 0.0;
    for (int q = 0; q < rule.size(); ++q) {
        const auto& l = rule.bary[q];
        s += rule.weight[q] * std::pow(l[0], a) * std::pow(l[1], b) * std::pow(l[2], c) *
             std::pow(l[3], d);
    }
    return s;
}

}  // namespace

TEST_CASE("sphere level set basics") {
    auto ls = make_sphere(1.0);
    CHECK(ls->phi(Vec3(2, 0, 0)) == doctest::Approx(1.0));
    CHECK(ls->phi(Vec3(0, 0.5, 0)) == doctest::Approx(-0.5));
    CHECK((ls->normal(Vec3(0, 0, 3)) - Vec3(0, 0, 1)).norm() == doctest::Approx(0.0));
    const Mat3 P = ls->projector(Vec3(2, 0, 0));
    CHECK((P - Eigen::DiagonalMatrix<double, 3>(0, 1, 1).toDenseMatrix()).norm() ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(ls->normal(Vec3::Zero()), Error);
    CHECK_THROWS_AS(make_sphere(-1.0), Error);
}

TEST_CASE("sphere shape operator matches (I - n n^T)/|x|") {
    for (double radius : {1.0, 2.0}) {
        auto ls = make_sphere(radius);
        const Vec3 x = radius * Vec3(0.36, -0.48, 0.8).normalized();
        const Mat3 S = ls->shape_operator(x, 1e-6);
        const Vec3 n = x.normalized();
        const Mat3 Sref = tangential_projector(n) / radius;
        CHECK((S - Sref).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("torus level set: zero set and gradient") {
    const double R = 1.0, rmin = 0.3, rmax = 0.6;
    auto ls = make_torus(R, rmin, rmax);
    // Points on the surface where the tube radius is known exactly.
    CHECK(std::abs(ls->phi(Vec3(R + rmin, 0, 0))) < 1e-13);
    CHECK(std::abs(ls->phi(Vec3(R - rmin, 0, 0))) < 1e-13);
    CHECK(std::abs(ls->phi(Vec3(-(R + rmax), 0, 0))) < 1e-13);
    CHECK(std::abs(ls->phi(Vec3(0, R, rmin + 0.5 * (rmax - rmin)))) < 1e-13);

    // Analytic gradient against central differences at generic points.
    const double fd = 1e-6;
    for (const Vec3& x : {Vec3(1.2, 0.3, 0.2), Vec3(-0.8, 0.7, -0.25), Vec3(0.1, -1.1, 0.4)}) {
        const Vec3 g = ls->grad(x);
        for (int k = 0; k < 3; ++k) {
            Vec3 xp = x, xm = x;
            xp[k] += fd;
            xm[k] -= fd;
            const double gfd = (ls->phi(xp) - ls->phi(xm)) / (2.0 * fd);
            CHECK(g[k] == doctest::Approx(gfd).epsilon(1e-6));
        }
    }
    CHECK_THROWS_AS(make_torus(1.0, 0.7, 0.6), Error);   // r_min > r_max
    CHECK_THROWS_AS(make_torus(1.0, 0.3, 1.1), Error);   // r_max >= R
    CHECK_THROWS_AS(make_torus(1.0, -0.1, 0.5), Error);  // r_min <= 0
}

TEST_CASE("triangle quadrature monomial exactness") {
    for (int degree : {2, 4}) {
        const QuadRule& r = triangle_rule(degree);
        CHECK(monomial(r, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(monomial(r, 1, 0, 0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
        CHECK(monomial(r, 2, 0, 0, 0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
        CHECK(monomial(r, 1, 1, 0, 0) == doctest::Approx(1.0 / 12.0).epsilon(1e-13));
    }
    const QuadRule& r4 = triangle_rule(4);
    CHECK(monomial(r4, 3, 0, 0, 0) == doctest::Approx(1.0 / 10.0).epsilon(1e-13));
    CHECK(monomial(r4, 4, 0, 0, 0) == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
    CHECK(monomial(r4, 3, 1, 0, 0) == doctest::Approx(1.0 / 60.0).epsilon(1e-13));
    CHECK(monomial(r4, 2, 2, 0, 0) == doctest::Approx(1.0 / 90.0).epsilon(1e-13));
    CHECK(monomial(r4, 2, 1, 1, 0) == doctest::Approx(1.0 / 180.0).epsilon(1e-13));
    CHECK_THROWS_AS(triangle_rule(7), Error);
}

TEST_CASE("tetrahedron quadrature monomial exactness") {
    for (int degree : {2, 4}) {
        const QuadRule& r = tet_rule(degree);
        CHECK(monomial(r, 0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(monomial(r, 1, 0, 0, 0) == doctest::Approx(1.0 / 4.0).epsilon(1e-14));
        CHECK(monomial(r, 2, 0, 0, 0) == doctest::Approx(1.0 / 10.0).epsilon(1e-13));
        CHECK(monomial(r, 1, 1, 0, 0) == doctest::Approx(1.0 / 20.0).epsilon(1e-13));
    }
    const QuadRule& r4 = tet_rule(4);
    CHECK(monomial(r4, 4, 0, 0, 0) == doctest::Approx(1.0 / 35.0).epsilon(1e-13));
    CHECK(monomial(r4, 3, 1, 0, 0) == doctest::Approx(1.0 / 140.0).epsilon(1e-13));
    CHECK(monomial(r4, 2, 2, 0, 0) == doctest::Approx(1.0 / 210.0).epsilon(1e-13));
    CHECK(monomial(r4, 2, 1, 1, 0) == doctest::Approx(1.0 / 420.0).epsilon(1e-13));
    CHECK(monomial(r4, 1, 1, 1, 1) == doctest::Approx(1.0 / 840.0).epsilon(1e-13));
    for (double w : r4.weight) CHECK(w > 0.0);
    CHECK_THROWS_AS(tet_rule(9), Error);
}

TEST_CASE("Gauss-Jacobi rules on [0,1]") {
    std::vector<double> x, w;
    gauss_jacobi01(3, 0, x, w);  // plain Gauss-Legendre, exact through degree 5
    double s0 = 0.0, s5 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s5 += w[i] * std::pow(x[i], 5);
    }
    CHECK(s0 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(s5 == doctest::Approx(1.0 / 6.0).epsilon(1e-13));

    gauss_jacobi01(4, 2, x, w);  // weight (1-x)^2, exact through degree 7
    double t0 = 0.0, t7 = 0.0;
    for (size_t i = 0; i < x.size(); ++i) {
        t0 += w[i];
        t7 += w[i] * std::pow(x[i], 7);
    }
    CHECK(t0 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
    // int_0^1 t^7 (1-t)^2 dt = 1/8 - 2/9 + 1/10 = 1/360
    CHECK(t7 == doctest::Approx(1.0 / 360.0).epsilon(1e-12));
}

TEST_CASE("background mesh at level 0 is the full 48-tet box") {
    auto ls = make_sphere(1.0);
    BackgroundMesh bg = build_mesh(ls, 0);
    CHECK(bg.n_tets() == 48);
    CHECK(bg.h == doctest::Approx(5.0 / 3.0).epsilon(1e-15));
    ActiveMesh mesh(std::make_shared<BackgroundMesh>(std::move(bg)));
    CHECK(mesh.n_cells() > 0);
    CHECK(mesh.band_volume() > 0.0);
    CHECK(mesh.band_volume() < std::pow(10.0 / 3.0, 3) + 1e-12);
}

TEST_CASE("active band is at the target level with nonzero vertex phi") {
    auto ls = make_sphere(1.0);
    auto bg = std::make_shared<BackgroundMesh>(build_mesh(ls, 3));
    ActiveMesh mesh(bg);
    CHECK(mesh.h() == doctest::Approx(10.0 / 3.0 / 16.0).epsilon(1e-15));
    for (int c = 0; c < mesh.n_cells(); ++c) {
        CHECK(bg->tet_level[mesh.background_tet(c)] == 3);
        for (int v : mesh.cell_vertices(c)) CHECK(mesh.vertex_phi(v) != 0.0);
    }
    // Edge bookkeeping is consistent.
    const auto& ev = ActiveMesh::tet_edge_vertices();
    for (int c = 0; c < std::min(mesh.n_cells(), 50); ++c) {
        const auto& vtx = mesh.cell_vertices(c);
        const auto& ce = mesh.cell_edges(c);
        for (int e = 0; e < 6; ++e) {
            CHECK(ce[e] == mesh.edge_index(vtx[ev[e][0]], vtx[ev[e][1]]));
            CHECK(ce[e] >= 0);
        }
    }
}

TEST_CASE("mesh build fails when the box misses the surface") {
    CHECK_THROWS_AS(build_mesh(make_sphere(1.0, Vec3(10, 10, 10)), 2), Error);
    CHECK_THROWS_AS(build_mesh(make_sphere(1.0), 11), Error);
}

TEST_CASE("plane cut is reproduced exactly at every sublevel") {
    auto plane = std::make_shared<PlaneLevelSet>(0.25);
    auto bg = std::make_shared<BackgroundMesh>(build_mesh(plane, 2));
    ActiveMesh mesh(bg);
    const double exact = std::pow(10.0 / 3.0, 2);
    for (int s : {0, 1, 2})
        CHECK(surface_area(mesh, *plane, s) == doctest::Approx(exact).epsilon(1e-12));
}

TEST_CASE("sphere area converges under level and sublevel refinement") {
    const double exact = 4.0 * kPi;
    auto ls = make_sphere(1.0);
    double err_prev = 0.0;
    for (int level : {2, 3, 4}) {
        ActiveMesh mesh(std::make_shared<BackgroundMesh>(build_mesh(ls, level)));
        const double err = std::abs(surface_area(mesh, *ls, 1) - exact);
        if (level > 2) CHECK(err_prev / err > 3.0);  // second-order geometry
        err_prev = err;
    }
    CHECK(err_prev / exact < 2e-3);

    ActiveMesh mesh(std::make_shared<BackgroundMesh>(build_mesh(ls, 3)));
    double sub_prev = std::abs(surface_area(mesh, *ls, 0) - exact);
    for (int s : {1, 2}) {
        const double err = std::abs(surface_area(mesh, *ls, s) - exact);
        CHECK(err < sub_prev);
        sub_prev = err;
    }
    CHECK(sub_prev / exact < 2e-3);
}

TEST_CASE("surface touching the box boundary still builds") {
    // Sphere through the box face centers; some lattice vertices lie exactly
    // on the surface, exercising the zero-phi nudge.
    auto ls = make_sphere(5.0 / 3.0);
    ActiveMesh mesh(std::make_shared<BackgroundMesh>(build_mesh(ls, 2)));
    const double exact = 4.0 * kPi * std::pow(5.0 / 3.0, 2);
    CHECK(surface_area(mesh, *ls, 1) == doctest::Approx(exact).epsilon(0.05));
}

TEST_CASE("surface geometry arrays are consistent") {
    auto ls = make_sphere(1.0);
    ActiveMesh mesh(std::make_shared<BackgroundMesh>(build_mesh(ls, 2)));
    SurfaceGeometry g = build_surface_geometry(mesh, *ls, 1, 4, 2, true);

    CHECK(g.cell_qp_begin.front() == 0);
    CHECK(g.cell_qp_begin.back() == g.n_qp());
    CHECK(g.cell_tri_begin.back() == g.n_tri());
    CHECK(g.n_qp() == 6 * g.n_tri());  // degree-4 rule: 6 points per triangle
    CHECK(g.area() == doctest::Approx(surface_area(mesh, *ls, 1)).epsilon(1e-13));
    CHECK(static_cast<int>(g.shape.size()) == 6 * g.n_qp());

    for (int q = 0; q < g.n_qp(); ++q) {
        const Vec3 n(g.nx[q], g.ny[q], g.nz[q]);
        CHECK(n.norm() == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(g.qw[q] > 0.0);
        // Sphere: S = (I - n n^T)/|x| with n = x/|x|.
        const Vec3 x(g.qx[q], g.qy[q], g.qz[q]);
        const Mat3 Sref = tangential_projector(x.normalized()) / x.norm();
        CHECK((g.shape_at(q) - Sref).cwiseAbs().maxCoeff() < 1e-5);
    }

    // Bulk stabilisation points tile the band exactly.
    double vol = 0.0;
    for (double w : g.bqw) vol += w;
    CHECK(vol == doctest::Approx(mesh.band_volume()).epsilon(1e-13));
    CHECK(static_cast<int>(g.bqx.size()) == g.bulk_per_cell * mesh.n_cells());
    for (size_t q = 0; q < g.bnx.size(); ++q)
        CHECK(Vec3(g.bnx[q], g.bny[q], g.bnz[q]).norm() == doctest::Approx(1.0).epsilon(1e-13));

    // Triangle vertices sit close to the zero level set (second-order cut).
    for (int t = 0; t < g.n_tri(); ++t)
        for (int v = 0; v < 3; ++v) {
            const Vec3 p(g.tri_xyz[9 * t + 3 * v], g.tri_xyz[9 * t + 3 * v + 1],
                         g.tri_xyz[9 * t + 3 * v + 2]);
            CHECK(std::abs(ls->phi(p)) < 0.05);
        }
}
