/// @file test_fe_material.cpp
/// @brief Unit tests for the FE spaces (nodal bases, interpolation) and the
///        phase-dependent material laws.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "surfnsch/fe_space.hpp"
#include "surfnsch/level_set.hpp"
#include "surfnsch/material.hpp"
#include "surfnsch/mesh.hpp"

using namespace surfnsch;

namespace {

std::shared_ptr<const ActiveMesh> sphere_band(int level) {
    return std::make_shared<ActiveMesh>(
        std::make_shared<BackgroundMesh>(build_mesh(make_sphere(1.0), level)));
}

std::array<double, 4> random_bary(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> dist(0.05, 1.0);
    std::array<double, 4> l{dist(rng), dist(rng), dist(rng), dist(rng)};
    const double s = l[0] + l[1] + l[2] + l[3];
    for (double& v : l) v /= s;
    return l;
}

}  // namespace

TEST_CASE("dof counts and nodal basis property") {
    auto mesh = sphere_band(2);
    auto p1 = std::make_shared<FESpace>(mesh, 1);
    auto p2 = std::make_shared<FESpace>(mesh, 2);
    CHECK(p1->n_dofs() == static_cast<int>(mesh->active_vertices().size()));
    CHECK(p2->n_dofs() == p1->n_dofs() + static_cast<int>(mesh->edges().size()));

    // Nodal property on the reference tet: N_j(node_i) = delta_ij.
    const auto& ev = ActiveMesh::tet_edge_vertices();
    std::array<std::array<double, 4>, 10> nodes{};
    for (int i = 0; i < 4; ++i) nodes[i][i] = 1.0;
    for (int e = 0; e < 6; ++e) {
        nodes[4 + e][ev[e][0]] = 0.5;
        nodes[4 + e][ev[e][1]] = 0.5;
    }
    for (int i = 0; i < 10; ++i) {
        double N[10];
        FESpace::shape(2, nodes[i], N);
        for (int j = 0; j < 10; ++j)
            CHECK(N[j] == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
    }
}

TEST_CASE("partition of unity and zero gradient sum") {
    auto mesh = sphere_band(1);
    std::mt19937_64 rng(7);
    const auto& g = mesh->geom(0).grad_lambda;
    for (int order : {1, 2}) {
        const int n = order == 1 ? 4 : 10;
        for (int trial = 0; trial < 20; ++trial) {
            const auto l = random_bary(rng);
            double N[10];
            Vec3 dN[10];
            FESpace::shape(order, l, N);
            FESpace::shape_grad(order, l, g, dN);
            double sum = 0.0;
            Vec3 gsum = Vec3::Zero();
            for (int i = 0; i < n; ++i) {
                sum += N[i];
                gsum += dN[i];
            }
            CHECK(sum == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(gsum.norm() < 1e-12);
        }
    }
}

TEST_CASE("P2 reproduces quadratics, P1 reproduces affine functions") {
    auto mesh = sphere_band(2);
    auto quad = [](const Vec3& x) {
        return x.x() * x.x() + 2.0 * x.y() * x.y() + 3.0 * x.z() * x.z() + x.x() * x.y() -
               2.0 * x.y() * x.z() + x.x() - x.z() + 1.0;
    };
    auto affine = [](const Vec3& x) { return 2.0 * x.x() - 3.0 * x.y() + 0.5 * x.z() - 1.0; };

    auto p2 = std::make_shared<FESpace>(mesh, 2);
    auto p1 = std::make_shared<FESpace>(mesh, 1);
    FEFunction f2 = interpolate_scalar(p2, quad);
    FEFunction f1 = interpolate_scalar(p1, affine);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> cell_dist(0, mesh->n_cells() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        const int c = cell_dist(rng);
        const auto l = random_bary(rng);
        Vec3 x = Vec3::Zero();
        for (int i = 0; i < 4; ++i) x += l[i] * mesh->geom(c).x[i];
        CHECK(f2.eval_scalar(c, l) == doctest::Approx(quad(x)).epsilon(1e-12));
        CHECK(f1.eval_scalar(c, l) == doctest::Approx(affine(x)).epsilon(1e-12));
    }
}

TEST_CASE("vector evaluation and exact Jacobian of an affine field") {
    auto mesh = sphere_band(2);
    auto p2 = std::make_shared<FESpace>(mesh, 2);
    Mat3 A;
    A << 1, 2, -1, 0, 3, 1, -2, 0.5, 4;
    const Vec3 b(0.3, -0.7, 1.1);
    FEFunction u = interpolate_vector(p2, [&](const Vec3& x) -> Vec3 { return A * x + b; });

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> cell_dist(0, mesh->n_cells() - 1);
    for (int trial = 0; trial < 20; ++trial) {
        const int c = cell_dist(rng);
        const auto l = random_bary(rng);
        Vec3 x = Vec3::Zero();
        for (int i = 0; i < 4; ++i) x += l[i] * mesh->geom(c).x[i];
        CHECK((u.eval_vector(c, l) - (A * x + b)).norm() < 1e-12);
        CHECK((u.grad_vector(c, l) - A).cwiseAbs().maxCoeff() < 1e-11);
    }
    // grad_scalar agrees on an affine scalar.
    FEFunction f = interpolate_scalar(p2, [](const Vec3& x) { return 2.0 * x.x() - x.z(); });
    CHECK((f.grad_scalar(0, {0.25, 0.25, 0.25, 0.25}) - Vec3(2, 0, -1)).norm() < 1e-12);
}

TEST_CASE("interface profile interpolation at the pole") {
    const double eps = 0.05;
    auto profile = [eps](const Vec3& x) {
        return 0.5 * (1.0 + std::tanh(x.z() / (2.0 * std::sqrt(2.0) * eps)));
    };
    // Frozen reference for the profile value at the pole.
    CHECK(std::abs(profile(Vec3(0, 0, 1)) - 0.99999927865) < 1e-9);

    auto mesh = sphere_band(3);
    auto p2 = std::make_shared<FESpace>(mesh, 2);
    FEFunction c = interpolate_scalar(p2, profile);
    std::array<double, 4> l{};
    const int cell = locate_point(*mesh, Vec3(0, 0, 1), l);
    CHECK(std::abs(c.eval_scalar(cell, l) - profile(Vec3(0, 0, 1))) < 1e-5);
}

TEST_CASE("density and viscosity laws with cut-off") {
    MaterialParams p;
    p.rho1 = 3.0;
    p.rho2 = 1.0;
    p.eta1 = 0.2;
    p.eta2 = 0.1;
    MaterialLaws laws(p);
    CHECK(!laws.relabeled());
    CHECK(laws.orientation_sign() == 1.0);
    CHECK(laws.rho_cutoff(-0.2) == doctest::Approx(1.0));
    CHECK(laws.rho_cutoff(0.0) == doctest::Approx(1.0));
    CHECK(laws.rho_cutoff(0.5) == doctest::Approx(2.0));
    CHECK(laws.rho_cutoff(1.0) == doctest::Approx(3.0));
    CHECK(laws.eta_cutoff(-1.0) == doctest::Approx(0.1));
    CHECK(laws.eta_cutoff(1.0) == doctest::Approx(0.2));

    // Smoothed law: exact light density at c = 0, frozen value at c = 1.
    CHECK(laws.rho_smooth(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(laws.rho_smooth(1.0) == doctest::Approx(2.9306852821501206).epsilon(1e-12));
    CHECK(laws.theta2(0.5) == doctest::Approx(1.9999092042625951).epsilon(1e-12));

    // drho_dc is the exact derivative of rho_smooth, for both orientations.
    MaterialParams q = p;
    std::swap(q.rho1, q.rho2);
    std::swap(q.eta1, q.eta2);
    MaterialLaws flipped(q);
    CHECK(flipped.relabeled());
    CHECK(flipped.orientation_sign() == -1.0);
    for (const MaterialLaws* m : {&laws, &flipped})
        for (double c : {-0.7, -0.1, 0.0, 0.3, 0.5, 0.9, 1.0, 1.4}) {
            const double fd = (m->rho_smooth(c + 1e-6) - m->rho_smooth(c - 1e-6)) / 2e-6;
            CHECK(m->drho_dc(c) == doctest::Approx(fd).epsilon(1e-7));
            CHECK(m->theta2(c) >= 0.0);
            CHECK(m->rho_smooth(c) > 0.0);
        }

    // Relabeling symmetry: laws(3,1) at c equals laws(1,3) at 1-c.
    for (double c : {-0.5, 0.0, 0.25, 0.8, 1.3}) {
        CHECK(laws.rho_smooth(c) == doctest::Approx(flipped.rho_smooth(1.0 - c)).epsilon(1e-14));
        CHECK(laws.theta2(c) == doctest::Approx(flipped.theta2(1.0 - c)).epsilon(1e-14));
        CHECK(laws.eta_cutoff(c) == doctest::Approx(flipped.eta_cutoff(1.0 - c)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(MaterialLaws(MaterialParams{-1.0, 1.0, 1.0, 1.0, 0.1, 2.0}), Error);
    CHECK_THROWS_AS(MaterialLaws(MaterialParams{1.0, 1.0, 1.0, 1.0, 0.1, 1.0}), Error);
    // Smoothing width incompatible with the density ratio (positivity lost).
    CHECK_THROWS_AS(MaterialLaws(MaterialParams{1000.0, 1.0, 1.0, 1.0, 0.1, 2.0}), Error);
}

TEST_CASE("double well and quadratic truncation") {
    MaterialLaws laws(MaterialParams{});
    CHECK(MaterialLaws::f0(0.0) == 0.0);
    CHECK(MaterialLaws::f0(1.0) == 0.0);
    CHECK(MaterialLaws::f0(0.5) == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(MaterialLaws::f0_prime(0.0) == 0.0);
    CHECK(MaterialLaws::f0_prime(0.5) == 0.0);
    CHECK(MaterialLaws::f0_prime(1.0) == 0.0);
    CHECK(MaterialLaws::f0_prime(0.25) == doctest::Approx(0.046875).epsilon(1e-15));

    // f0_prime matches a finite difference of f0.
    for (double c : {-0.3, 0.2, 0.6, 1.1})
        CHECK(MaterialLaws::f0_prime(c) ==
              doctest::Approx((MaterialLaws::f0(c + 1e-6) - MaterialLaws::f0(c - 1e-6)) / 2e-6)
                  .epsilon(1e-7));

    CHECK(laws.lipschitz_L() == doctest::Approx(2.75).epsilon(1e-15));
    // C^1 matching at the branch points +-(alpha-1)/2 ... (1+alpha)/2.
    for (double b : {-0.5, 1.5}) {
        CHECK(laws.f0_trunc(b - 1e-9) == doctest::Approx(laws.f0_trunc(b + 1e-9)).epsilon(1e-7));
        CHECK(laws.f0_prime_trunc(b - 1e-9) ==
              doctest::Approx(laws.f0_prime_trunc(b + 1e-9)).epsilon(1e-6));
    }
    CHECK(laws.f0_trunc(10.0) == doctest::Approx(105.859375).epsilon(1e-14));
    CHECK(laws.f0_trunc(0.3) == doctest::Approx(MaterialLaws::f0(0.3)).epsilon(1e-15));

    // Slope bounds of the truncated derivative: -1/4 <= slope <= L.
    double worst_lo = 0.0, worst_hi = 0.0;
    for (double x = -4.0; x <= 4.0; x += 0.037)
        for (double y = x + 0.01; y <= 4.0; y += 0.113) {
            const double s = (laws.f0_prime_trunc(y) - laws.f0_prime_trunc(x)) / (y - x);
            worst_lo = std::min(worst_lo, s);
            worst_hi = std::max(worst_hi, s);
        }
    CHECK(worst_lo >= -0.25 - 1e-10);
    CHECK(worst_hi <= laws.lipschitz_L() + 1e-10);

    // Linear growth bound |f0_trunc'(x)| <= L |x|.
    for (double x = -6.0; x <= 6.0; x += 0.0371)
        CHECK(std::abs(laws.f0_prime_trunc(x)) <= laws.lipschitz_L() * std::abs(x) + 1e-12);
}
