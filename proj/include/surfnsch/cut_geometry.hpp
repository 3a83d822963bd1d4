#pragma once
/// @file cut_geometry.hpp
/// @brief Discrete surface extraction (marching tetrahedra with virtual
///        sublevels) and quadrature data attached to the active band.

#include <array>
#include <functional>
#include <vector>

#include "surfnsch/core.hpp"
#include "surfnsch/level_set.hpp"
#include "surfnsch/mesh.hpp"

namespace surfnsch {

/// Callback receiving one extracted surface triangle owned by active cell `cell`.
using TriVisitor = std::function<void(int cell, const std::array<Vec3, 3>& tri)>;

/// Runs marching tetrahedra on every active cell.  Each cell is virtually
/// subdivided `sublevels` times (8-way, level-set re-evaluated at the new
/// vertices) before the linear cut rule is applied, so the discrete surface
/// converges under sublevel refinement without changing the FE mesh.
/// Triangles are oriented so their geometric normal points along grad(phi).
void march_surface(const ActiveMesh& mesh, const LevelSet& ls, int sublevels,
                   const TriVisitor& visit);

/// Total area of the extracted discrete surface (streaming, stores nothing).
double surface_area(const ActiveMesh& mesh, const LevelSet& ls, int sublevels);

/// Quadrature data for all band integrals, stored as flat cell-major arrays.
///
/// Surface points carry the level-set normal (and optionally the shape
/// operator) evaluated at the point; their weights include the triangle
/// measure, so sum(qw) equals the discrete surface area.  Bulk points cover
/// every active tetrahedron in full and are used by the normal-gradient
/// volume stabilisation terms; their weights include the tet volume.
struct SurfaceGeometry {
    // --- surface quadrature, cell-major ---
    std::vector<double> qx, qy, qz, qw;
    std::vector<double> nx, ny, nz;
    /// 6 entries per point (s00,s01,s02,s11,s12,s22); empty if not requested.
    std::vector<double> shape;
    /// size n_cells+1; surface points of cell c live in [begin[c], begin[c+1]).
    std::vector<int> cell_qp_begin;

    // --- bulk quadrature, fixed stride per cell ---
    int bulk_per_cell = 0;
    std::vector<double> bqx, bqy, bqz, bqw;
    std::vector<double> bnx, bny, bnz;

    // --- triangle soup for export, cell-major ---
    std::vector<double> tri_xyz;  ///< 9 entries per triangle (3 vertices)
    std::vector<int> cell_tri_begin;

    int n_qp() const { return static_cast<int>(qx.size()); }
    int n_tri() const { return static_cast<int>(tri_xyz.size() / 9); }
    double area() const;
    bool has_shape() const { return !shape.empty(); }

    /// Shape operator at surface point q as a symmetric matrix.
    Mat3 shape_at(int q) const;
};

/// Builds all quadrature data for the active band.
/// `surface_degree` selects the triangle rule (2 or 4), `bulk_degree` the
/// tetrahedron rule for the stabilisation integrals (2 or 4).
SurfaceGeometry build_surface_geometry(const ActiveMesh& mesh, const LevelSet& ls,
                                       int sublevels, int surface_degree = 4,
                                       int bulk_degree = 2, bool with_shape = true);

}  // namespace surfnsch
