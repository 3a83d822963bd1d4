/// @file mesh.hpp
/// @brief Background bulk mesh (octree refined toward the surface, Kuhn
///        tetrahedralization) and the active narrow band of cut tetrahedra.
#pragma once

#include "surfnsch/core.hpp"
#include "surfnsch/level_set.hpp"

#include <array>
#include <memory>
#include <unordered_map>
#include <vector>

namespace surfnsch {

/// Tetrahedral mesh of the bulk box [-box_half, box_half]^3. The base grid of
/// 2x2x2 cube cells is refined toward the zero level set until cells touching
/// the surface reach the requested level; each leaf cube is split into 6
/// Kuhn tetrahedra with a globally consistent diagonal so that equal-size
/// neighbors are face-conforming. Cell size at level l is box/2^(l+1).
struct BackgroundMesh {
    std::shared_ptr<const LevelSet> surface;
    int level = 0;
    double h = 0.0;     ///< cell size at the finest (target) level
    Vec3 box_lo;        ///< lower corner of the box
    double box_size = 0.0;

    std::vector<Vec3> vertices;
    std::vector<double> vertex_phi; ///< phi at vertices, exact zeros nudged by +1e-12*h
    std::vector<std::array<int, 4>> tets;
    std::vector<int16_t> tet_level; ///< refinement level of the owning cube cell

    int n_tets() const { return static_cast<int>(tets.size()); }
};

/// Build the background mesh for the given surface.
/// Throws geometry_error when level > 10 or when no cell is cut by the surface
/// (the box does not contain it).
BackgroundMesh build_mesh(std::shared_ptr<const LevelSet> surface, int level,
                          double box_half = 5.0 / 3.0);

/// Affine geometry of one tetrahedron: vertex coordinates, barycentric
/// gradients (constant over the tet), and volume.
struct CellGeom {
    std::array<Vec3, 4> x;
    std::array<Vec3, 4> grad_lambda;
    double volume = 0.0;
};

/// The active narrow band: all background tets whose vertex phi values change
/// sign. By construction every active tet sits at the finest level, so the
/// band is face-conforming (asserted at build time).
class ActiveMesh {
public:
    explicit ActiveMesh(std::shared_ptr<const BackgroundMesh> bg);

    const BackgroundMesh& background() const { return *bg_; }
    const LevelSet& surface() const { return *bg_->surface; }
    std::shared_ptr<const LevelSet> surface_ptr() const { return bg_->surface; }
    double h() const { return bg_->h; }
    int level() const { return bg_->level; }

    int n_cells() const { return static_cast<int>(cells_.size()); }
    int background_tet(int cell) const { return cells_[cell]; }
    const std::array<int, 4>& cell_vertices(int cell) const { return bg_->tets[cells_[cell]]; }
    const CellGeom& geom(int cell) const { return geom_[cell]; }
    double vertex_phi(int global_vertex) const { return bg_->vertex_phi[global_vertex]; }
    const Vec3& vertex(int global_vertex) const { return bg_->vertices[global_vertex]; }

    /// Active vertices (sorted ascending global ids).
    const std::vector<int>& active_vertices() const { return verts_; }
    /// Unique edges of active tets as sorted (a, b) global vertex pairs,
    /// lexicographically ordered.
    const std::vector<std::array<int, 2>>& edges() const { return edges_; }
    /// Edge index lookup; returns -1 when the pair is not an active edge.
    int edge_index(int a, int b) const;
    /// Local edge vertices of a tet: pairs into the cell_vertices array.
    static const std::array<std::array<int, 2>, 6>& tet_edge_vertices();
    /// Per-cell edge indices (6 per tet, same order as tet_edge_vertices()).
    const std::array<int, 6>& cell_edges(int cell) const { return cell_edges_[cell]; }

    /// Total band volume (sum of active tet volumes).
    double band_volume() const;

private:
    std::shared_ptr<const BackgroundMesh> bg_;
    std::vector<int> cells_;
    std::vector<CellGeom> geom_;
    std::vector<int> verts_;
    std::vector<std::array<int, 2>> edges_;
    std::unordered_map<uint64_t, int> edge_map_;
    std::vector<std::array<int, 6>> cell_edges_;
};

/// Compute the affine geometry of a tet given its vertex positions.
CellGeom make_cell_geom(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

} // namespace surfnsch
