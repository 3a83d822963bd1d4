#pragma once
/// @file forms_common.hpp
/// @brief Internal helpers shared by the reference and optimized assembly
///        paths: basis evaluation at physical points and per-point geometry.

#include <array>

#include "surfnsch/core.hpp"
#include "surfnsch/cut_geometry.hpp"
#include "surfnsch/fe_space.hpp"
#include "surfnsch/mesh.hpp"

namespace surfnsch::detail {

/// Basis values and full (bulk) gradients of one space at one physical point.
struct Basis {
    int n = 0;
    double phi[10];
    Vec3 grad[10];

    void eval(int order, const CellGeom& geom, const Vec3& x) {
        n = order == 1 ? 4 : 10;
        const auto lambda = FESpace::barycentric(geom, x);
        FESpace::shape(order, lambda, phi);
        FESpace::shape_grad(order, lambda, geom.grad_lambda, grad);
    }

    double value(const double* coeffs, const std::array<int, 10>& dofs) const {
        double v = 0.0;
        for (int i = 0; i < n; ++i) v += phi[i] * coeffs[dofs[i]];
        return v;
    }

    Vec3 value_vec(const double* coeffs, const std::array<int, 10>& dofs) const {
        Vec3 v = Vec3::Zero();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) v[k] += phi[i] * coeffs[3 * dofs[i] + k];
        return v;
    }

    Vec3 grad_value(const double* coeffs, const std::array<int, 10>& dofs) const {
        Vec3 g = Vec3::Zero();
        for (int i = 0; i < n; ++i) g += coeffs[dofs[i]] * grad[i];
        return g;
    }

    /// Jacobian J(i,j) = d u_i / d x_j of an interleaved vector field.
    Mat3 jacobian(const double* coeffs, const std::array<int, 10>& dofs) const {
        Mat3 J = Mat3::Zero();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < 3; ++k) J.row(k) += coeffs[3 * dofs[i] + k] * grad[i].transpose();
        return J;
    }
};

/// Geometry of one surface quadrature point.
struct QpGeom {
    Vec3 x;
    double w = 0.0;
    Vec3 n;
    Mat3 P;
    Mat3 S;
    double trS = 0.0;
    double SS = 0.0;  ///< S : S

    void load(const SurfaceGeometry& g, int q) {
        x = Vec3(g.qx[q], g.qy[q], g.qz[q]);
        w = g.qw[q];
        n = Vec3(g.nx[q], g.ny[q], g.nz[q]);
        P = tangential_projector(n);
        S = g.shape_at(q);
        trS = S.trace();
        SS = S.squaredNorm();
    }
};

}  // namespace surfnsch::detail
