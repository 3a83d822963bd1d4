#pragma once
/// @file fe_space.hpp
/// @brief Continuous P1/P2 Lagrange spaces on the active band and nodal FE
///        functions with evaluation helpers.
///
/// Dof layout: P1 dofs are the active vertices (in ascending global-vertex
/// order); P2 appends the active edges (lexicographic order) after them.
/// Vector-valued functions store components interleaved: coefficient
/// ncomp*dof + component.

#include <array>
#include <functional>
#include <memory>
#include <vector>

#include "surfnsch/core.hpp"
#include "surfnsch/mesh.hpp"

namespace surfnsch {

class FESpace {
public:
    FESpace(std::shared_ptr<const ActiveMesh> mesh, int order);

    int order() const { return order_; }
    int n_dofs() const { return n_dofs_; }
    int n_cell_dofs() const { return order_ == 1 ? 4 : 10; }

    const ActiveMesh& mesh() const { return *mesh_; }
    std::shared_ptr<const ActiveMesh> mesh_ptr() const { return mesh_; }

    /// Global dofs of a cell; entries [0, n_cell_dofs()) are valid.
    /// P2 order: 4 vertex dofs, then the 6 edge dofs in tet_edge_vertices order.
    const std::array<int, 10>& cell_dofs(int cell) const { return cell_dofs_[cell]; }

    /// Nodal point of a dof (vertex position or edge midpoint).
    const Vec3& dof_point(int dof) const { return dof_points_[dof]; }

    /// Shape function values at barycentric coordinates; fills N[0, n_shape).
    static void shape(int order, const std::array<double, 4>& lambda, double N[10]);

    /// Physical shape gradients from the cell's barycentric gradients.
    static void shape_grad(int order, const std::array<double, 4>& lambda,
                           const std::array<Vec3, 4>& g, Vec3 dN[10]);

    /// Barycentric coordinates of a physical point in an affine tet.
    static std::array<double, 4> barycentric(const CellGeom& geom, const Vec3& x);

private:
    std::shared_ptr<const ActiveMesh> mesh_;
    int order_;
    int n_dofs_ = 0;
    std::vector<std::array<int, 10>> cell_dofs_;
    std::vector<Vec3> dof_points_;
};

/// A nodal FE function with 1 or 3 interleaved components.
struct FEFunction {
    std::shared_ptr<const FESpace> space;
    int ncomp = 1;
    VectorXd coeffs;

    FEFunction() = default;
    FEFunction(std::shared_ptr<const FESpace> s, int nc)
        : space(std::move(s)), ncomp(nc), coeffs(VectorXd::Zero(static_cast<Eigen::Index>(nc) * space->n_dofs())) {}

    double eval_scalar(int cell, const std::array<double, 4>& lambda) const;
    Vec3 eval_vector(int cell, const std::array<double, 4>& lambda) const;
    /// Gradient of a scalar function (full bulk gradient).
    Vec3 grad_scalar(int cell, const std::array<double, 4>& lambda) const;
    /// Jacobian of a vector function: (i,j) = d u_i / d x_j.
    Mat3 grad_vector(int cell, const std::array<double, 4>& lambda) const;
};

/// Nodal interpolation of a scalar / vector field.
FEFunction interpolate_scalar(std::shared_ptr<const FESpace> space,
                              const std::function<double(const Vec3&)>& f);
FEFunction interpolate_vector(std::shared_ptr<const FESpace> space,
                              const std::function<Vec3(const Vec3&)>& f);

/// Linear search for the active cell containing x (test/spot-check helper).
/// Returns the cell index and fills lambda; throws geometry_error when x is
/// not inside any active cell within tolerance.
int locate_point(const ActiveMesh& mesh, const Vec3& x, std::array<double, 4>& lambda,
                 double tol = 1e-10);

}  // namespace surfnsch
