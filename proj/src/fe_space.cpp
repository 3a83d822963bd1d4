/// @file fe_space.cpp
#include "surfnsch/fe_space.hpp"

#include <algorithm>
#include <unordered_map>

namespace surfnsch {

FESpace::FESpace(std::shared_ptr<const ActiveMesh> mesh, int order)
    : mesh_(std::move(mesh)), order_(order) {
    if (order_ != 1 && order_ != 2) throw config_error("FESpace: order must be 1 or 2");

    const auto& verts = mesh_->active_vertices();
    const int nv = static_cast<int>(verts.size());
    std::unordered_map<int, int> vert_dof;
    vert_dof.reserve(verts.size());
    for (int i = 0; i < nv; ++i) vert_dof.emplace(verts[i], i);

    const int ne = static_cast<int>(mesh_->edges().size());
    n_dofs_ = (order_ == 1) ? nv : nv + ne;

    dof_points_.resize(n_dofs_);
    for (int i = 0; i < nv; ++i) dof_points_[i] = mesh_->vertex(verts[i]);
    if (order_ == 2)
        for (int e = 0; e < ne; ++e) {
            const auto& ab = mesh_->edges()[e];
            dof_points_[nv + e] = 0.5 * (mesh_->vertex(ab[0]) + mesh_->vertex(ab[1]));
        }

    cell_dofs_.resize(mesh_->n_cells());
    for (int c = 0; c < mesh_->n_cells(); ++c) {
        auto& cd = cell_dofs_[c];
        cd.fill(-1);
        const auto& vtx = mesh_->cell_vertices(c);
        for (int i = 0; i < 4; ++i) cd[i] = vert_dof.at(vtx[i]);
        if (order_ == 2) {
            const auto& ce = mesh_->cell_edges(c);
            for (int e = 0; e < 6; ++e) cd[4 + e] = nv + ce[e];
        }
    }
}

void FESpace::shape(int order, const std::array<double, 4>& l, double N[10]) {
    if (order == 1) {
        for (int i = 0; i < 4; ++i) N[i] = l[i];
        return;
    }
    for (int i = 0; i < 4; ++i) N[i] = l[i] * (2.0 * l[i] - 1.0);
    const auto& ev = ActiveMesh::tet_edge_vertices();
    for (int e = 0; e < 6; ++e) N[4 + e] = 4.0 * l[ev[e][0]] * l[ev[e][1]];
}

void FESpace::shape_grad(int order, const std::array<double, 4>& l,
                         const std::array<Vec3, 4>& g, Vec3 dN[10]) {
    if (order == 1) {
        for (int i = 0; i < 4; ++i) dN[i] = g[i];
        return;
    }
    for (int i = 0; i < 4; ++i) dN[i] = (4.0 * l[i] - 1.0) * g[i];
    const auto& ev = ActiveMesh::tet_edge_vertices();
    for (int e = 0; e < 6; ++e) {
        const int a = ev[e][0], b = ev[e][1];
        dN[4 + e] = 4.0 * (l[a] * g[b] + l[b] * g[a]);
    }
}

std::array<double, 4> FESpace::barycentric(const CellGeom& geom, const Vec3& x) {
    const Vec3 d = x - geom.x[0];
    std::array<double, 4> l;
    for (int i = 0; i < 4; ++i) l[i] = (i == 0 ? 1.0 : 0.0) + geom.grad_lambda[i].dot(d);
    return l;
}

double FEFunction::eval_scalar(int cell, const std::array<double, 4>& lambda) const {
    double N[10];
    FESpace::shape(space->order(), lambda, N);
    const auto& cd = space->cell_dofs(cell);
    double v = 0.0;
    for (int i = 0; i < space->n_cell_dofs(); ++i) v += N[i] * coeffs[cd[i]];
    return v;
}

Vec3 FEFunction::eval_vector(int cell, const std::array<double, 4>& lambda) const {
    double N[10];
    FESpace::shape(space->order(), lambda, N);
    const auto& cd = space->cell_dofs(cell);
    Vec3 v = Vec3::Zero();
    for (int i = 0; i < space->n_cell_dofs(); ++i)
        for (int k = 0; k < 3; ++k) v[k] += N[i] * coeffs[3 * cd[i] + k];
    return v;
}

Vec3 FEFunction::grad_scalar(int cell, const std::array<double, 4>& lambda) const {
    Vec3 dN[10];
    FESpace::shape_grad(space->order(), lambda, space->mesh().geom(cell).grad_lambda, dN);
    const auto& cd = space->cell_dofs(cell);
    Vec3 gsum = Vec3::Zero();
    for (int i = 0; i < space->n_cell_dofs(); ++i) gsum += coeffs[cd[i]] * dN[i];
    return gsum;
}

Mat3 FEFunction::grad_vector(int cell, const std::array<double, 4>& lambda) const {
    Vec3 dN[10];
    FESpace::shape_grad(space->order(), lambda, space->mesh().geom(cell).grad_lambda, dN);
    const auto& cd = space->cell_dofs(cell);
    Mat3 J = Mat3::Zero();
    for (int i = 0; i < space->n_cell_dofs(); ++i)
        for (int k = 0; k < 3; ++k) J.row(k) += coeffs[3 * cd[i] + k] * dN[i].transpose();
    return J;
}

FEFunction interpolate_scalar(std::shared_ptr<const FESpace> space,
                              const std::function<double(const Vec3&)>& f) {
    FEFunction u(space, 1);
    for (int i = 0; i < space->n_dofs(); ++i) u.coeffs[i] = f(space->dof_point(i));
    return u;
}

FEFunction interpolate_vector(std::shared_ptr<const FESpace> space,
                              const std::function<Vec3(const Vec3&)>& f) {
    FEFunction u(space, 3);
    for (int i = 0; i < space->n_dofs(); ++i) {
        const Vec3 v = f(space->dof_point(i));
        for (int k = 0; k < 3; ++k) u.coeffs[3 * i + k] = v[k];
    }
    return u;
}

int locate_point(const ActiveMesh& mesh, const Vec3& x, std::array<double, 4>& lambda,
                 double tol) {
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto l = FESpace::barycentric(mesh.geom(c), x);
        if (l[0] >= -tol && l[1] >= -tol && l[2] >= -tol && l[3] >= -tol) {
            lambda = l;
            return c;
        }
    }
    throw geometry_error("locate_point: point is not inside any active cell");
}

}  // namespace surfnsch
