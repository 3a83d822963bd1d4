/// @file mesh.cpp
#include "surfnsch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace surfnsch {

namespace {

struct Cell {
    int level;
    int i, j, k; // cell index in [0, 2^(level+1))^3
};

// Pack a lattice point (finest-level vertex indices, each in [0, 2^(lmax+1)])
// into a single key. With lmax <= 10 the indices fit comfortably in 21 bits.
inline uint64_t pack3(int a, int b, int c) {
    return (static_cast<uint64_t>(a) << 42) | (static_cast<uint64_t>(b) << 21) |
           static_cast<uint64_t>(c);
}

// The six permutations of (0,1,2) defining the Kuhn split; a fixed order keeps
// tet numbering deterministic.
constexpr int kPerm[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};

} // namespace

BackgroundMesh build_mesh(std::shared_ptr<const LevelSet> surface, int level, double box_half) {
    if (!surface) throw config_error("build_mesh: null surface");
    if (level < 0 || level > 10)
        throw geometry_error("build_mesh: refinement level must be in [0, 10], got " +
                             std::to_string(level));
    if (!(box_half > 0.0)) throw config_error("build_mesh: box_half must be positive");

    BackgroundMesh mesh;
    mesh.surface = surface;
    mesh.level = level;
    mesh.box_size = 2.0 * box_half;
    mesh.box_lo = Vec3(-box_half, -box_half, -box_half);
    mesh.h = mesh.box_size / std::pow(2.0, level + 1);

    const double margin = 2.0 * std::sqrt(3.0) * mesh.h; // one ring of finest cells

    // Refine the 2x2x2 base grid toward the surface. A cell is split when the
    // conservative Lipschitz test cannot rule out that the surface passes
    // within one finest-cell ring of it.
    std::vector<Cell> leaves;
    std::vector<Cell> frontier;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) frontier.push_back({0, i, j, k});

    for (int L = 0; L < level; ++L) {
        const double s = mesh.box_size / std::pow(2.0, L + 1);
        const double diag = std::sqrt(3.0) * s;
        std::vector<Cell> next;
        for (const Cell& c : frontier) {
            Vec3 lo = mesh.box_lo + s * Vec3(c.i, c.j, c.k);
            Vec3 center = lo + 0.5 * s * Vec3::Ones();
            double lip = surface->lipschitz_bound(lo, lo + s * Vec3::Ones());
            if (std::abs(surface->phi(center)) <= lip * (diag + margin)) {
                for (int di = 0; di < 2; ++di)
                    for (int dj = 0; dj < 2; ++dj)
                        for (int dk = 0; dk < 2; ++dk)
                            next.push_back(
                                {L + 1, 2 * c.i + di, 2 * c.j + dj, 2 * c.k + dk});
            } else {
                leaves.push_back(c);
            }
        }
        if (next.empty())
            throw geometry_error("build_mesh: refinement level " + std::to_string(L) +
                                 " marked no cells; the box does not appear to contain the surface");
        frontier.swap(next);
    }
    for (const Cell& c : frontier) leaves.push_back(c);

    // Deterministic leaf order: by level, then lexicographic cell index.
    std::sort(leaves.begin(), leaves.end(), [](const Cell& a, const Cell& b) {
        if (a.level != b.level) return a.level < b.level;
        if (a.i != b.i) return a.i < b.i;
        if (a.j != b.j) return a.j < b.j;
        return a.k < b.k;
    });

    // Tetrahedralize. Vertices are deduplicated on the finest-level lattice.
    std::unordered_map<uint64_t, int> vertex_ids;
    vertex_ids.reserve(leaves.size() * 2);
    auto vertex_id = [&](int fi, int fj, int fk) {
        uint64_t key = pack3(fi, fj, fk);
        auto it = vertex_ids.find(key);
        if (it != vertex_ids.end()) return it->second;
        int id = static_cast<int>(mesh.vertices.size());
        vertex_ids.emplace(key, id);
        mesh.vertices.push_back(mesh.box_lo + mesh.h * Vec3(fi, fj, fk));
        return id;
    };

    bool any_cut_cell = false;
    for (const Cell& c : leaves) {
        const int stride = 1 << (level - c.level); // cell size in finest lattice units
        const int fi = c.i * stride, fj = c.j * stride, fk = c.k * stride;
        int corner[2][2][2];
        for (int di = 0; di < 2; ++di)
            for (int dj = 0; dj < 2; ++dj)
                for (int dk = 0; dk < 2; ++dk)
                    corner[di][dj][dk] =
                        vertex_id(fi + di * stride, fj + dj * stride, fk + dk * stride);

        for (const auto& p : kPerm) {
            int steps[3] = {0, 0, 0};
            std::array<int, 4> tet;
            tet[0] = corner[0][0][0];
            for (int v = 1; v <= 3; ++v) {
                steps[p[v - 1]] = 1;
                tet[v] = corner[steps[0]][steps[1]][steps[2]];
            }
            mesh.tets.push_back(tet);
            mesh.tet_level.push_back(static_cast<int16_t>(c.level));
        }

        // Track whether any leaf cell is cut (corner sign change) so that a box
        // that misses the surface is rejected even at level 0.
        double mn = 1e300, mx = -1e300;
        for (int di = 0; di < 2; ++di)
            for (int dj = 0; dj < 2; ++dj)
                for (int dk = 0; dk < 2; ++dk) {
                    double v = surface->phi(mesh.vertices[corner[di][dj][dk]]);
                    mn = std::min(mn, v);
                    mx = std::max(mx, v);
                }
        if (mn < 0.0 && mx > 0.0) any_cut_cell = true;
    }
    if (!any_cut_cell)
        throw geometry_error("build_mesh: no cell is cut by the surface; "
                             "the box does not contain it");

    // Cache vertex phi with the exact-zero nudge.
    mesh.vertex_phi.resize(mesh.vertices.size());
    for (size_t v = 0; v < mesh.vertices.size(); ++v) {
        double p = surface->phi(mesh.vertices[v]);
        if (p == 0.0) p = 1e-12 * mesh.h;
        mesh.vertex_phi[v] = p;
    }

    // Fix tet orientation (positive volume) without disturbing determinism.
    for (auto& t : mesh.tets) {
        const Vec3& a = mesh.vertices[t[0]];
        double vol6 = (mesh.vertices[t[1]] - a)
                          .cross(mesh.vertices[t[2]] - a)
                          .dot(mesh.vertices[t[3]] - a);
        if (vol6 < 0.0) std::swap(t[2], t[3]);
    }

    // Every cut tet must have reached the finest level, otherwise the
    // Lipschitz marking failed and the band would be non-conforming.
    for (int t = 0; t < mesh.n_tets(); ++t) {
        const auto& tet = mesh.tets[t];
        double mn = 1e300, mx = -1e300;
        for (int v : tet) {
            mn = std::min(mn, mesh.vertex_phi[v]);
            mx = std::max(mx, mesh.vertex_phi[v]);
        }
        if (mn < 0.0 && mx > 0.0 && mesh.tet_level[t] != level)
            throw geometry_error("build_mesh: cut tet at level " +
                                 std::to_string(mesh.tet_level[t]) +
                                 " < target level (Lipschitz bound too small)");
    }
    return mesh;
}

CellGeom make_cell_geom(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
    CellGeom g;
    g.x = {a, b, c, d};
    Mat3 E;
    E.col(0) = b - a;
    E.col(1) = c - a;
    E.col(2) = d - a;
    double det = E.determinant();
    g.volume = det / 6.0;
    Mat3 Einv = E.inverse();
    // lambda_i for i = 1..3 have gradients given by the rows of E^-1; lambda_0
    // completes the partition of unity.
    for (int i = 0; i < 3; ++i) g.grad_lambda[i + 1] = Einv.row(i).transpose();
    g.grad_lambda[0] = -(g.grad_lambda[1] + g.grad_lambda[2] + g.grad_lambda[3]);
    return g;
}

const std::array<std::array<int, 2>, 6>& ActiveMesh::tet_edge_vertices() {
    static const std::array<std::array<int, 2>, 6> e = {
        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return e;
}

ActiveMesh::ActiveMesh(std::shared_ptr<const BackgroundMesh> bg) : bg_(std::move(bg)) {
    const BackgroundMesh& m = *bg_;
    for (int t = 0; t < m.n_tets(); ++t) {
        bool pos = false, neg = false;
        for (int v : m.tets[t]) (m.vertex_phi[v] > 0.0 ? pos : neg) = true;
        if (pos && neg) cells_.push_back(t);
    }
    if (cells_.empty())
        throw geometry_error("select_active: empty active set (no tet cut by the surface)");

    geom_.reserve(cells_.size());
    std::unordered_set<int> vset;
    for (int t : cells_) {
        const auto& tet = m.tets[t];
        geom_.push_back(make_cell_geom(m.vertices[tet[0]], m.vertices[tet[1]],
                                       m.vertices[tet[2]], m.vertices[tet[3]]));
        for (int v : tet) vset.insert(v);
    }
    verts_.assign(vset.begin(), vset.end());
    std::sort(verts_.begin(), verts_.end());

    // Unique sorted edge list over active tets.
    std::vector<std::array<int, 2>> raw;
    raw.reserve(cells_.size() * 6);
    for (size_t c = 0; c < cells_.size(); ++c) {
        const auto& tet = m.tets[cells_[c]];
        for (const auto& le : tet_edge_vertices()) {
            int a = tet[le[0]], b = tet[le[1]];
            if (a > b) std::swap(a, b);
            raw.push_back({a, b});
        }
    }
    std::sort(raw.begin(), raw.end());
    raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
    edges_ = std::move(raw);
    edge_map_.reserve(edges_.size() * 2);
    for (size_t e = 0; e < edges_.size(); ++e)
        edge_map_.emplace(pack3(0, edges_[e][0], edges_[e][1]), static_cast<int>(e));

    cell_edges_.resize(cells_.size());
    for (size_t c = 0; c < cells_.size(); ++c) {
        const auto& tet = m.tets[cells_[c]];
        for (int e = 0; e < 6; ++e) {
            int a = tet[tet_edge_vertices()[e][0]], b = tet[tet_edge_vertices()[e][1]];
            if (a > b) std::swap(a, b);
            cell_edges_[c][e] = edge_map_.at(pack3(0, a, b));
        }
    }

    // Conformity check: every interior face of an active tet must be matched by
    // a twin face of some tet of the same size (no hanging nodes in the band).
    std::unordered_map<uint64_t, int> face_count;
    auto face_key = [](int a, int b, int c) {
        int v[3] = {a, b, c};
        std::sort(v, v + 3);
        // FNV-style combine of three sorted vertex ids.
        uint64_t h = 1469598103934665603ull;
        for (int x : v) {
            h ^= static_cast<uint64_t>(x) + 0x9e3779b97f4a7c15ull;
            h *= 1099511628211ull;
        }
        return h;
    };
    for (int t = 0; t < m.n_tets(); ++t) {
        const auto& tet = m.tets[t];
        for (int f = 0; f < 4; ++f)
            face_count[face_key(tet[(f + 1) % 4], tet[(f + 2) % 4], tet[(f + 3) % 4])]++;
    }
    auto on_box_boundary = [&m](int a, int b, int c) {
        for (int axis = 0; axis < 3; ++axis)
            for (double plane : {m.box_lo[axis], m.box_lo[axis] + m.box_size}) {
                double tol = 1e-12 * m.box_size;
                if (std::abs(m.vertices[a][axis] - plane) < tol &&
                    std::abs(m.vertices[b][axis] - plane) < tol &&
                    std::abs(m.vertices[c][axis] - plane) < tol)
                    return true;
            }
        return false;
    };
    for (int t : cells_) {
        const auto& tet = m.tets[t];
        for (int f = 0; f < 4; ++f) {
            int a = tet[(f + 1) % 4], b = tet[(f + 2) % 4], c = tet[(f + 3) % 4];
            if (face_count.at(face_key(a, b, c)) < 2 && !on_box_boundary(a, b, c))
                throw geometry_error("select_active: hanging face adjacent to the active band");
        }
    }
}

int ActiveMesh::edge_index(int a, int b) const {
    if (a > b) std::swap(a, b);
    auto it = edge_map_.find(pack3(0, a, b));
    return it == edge_map_.end() ? -1 : it->second;
}

double ActiveMesh::band_volume() const {
    double v = 0.0;
    for (const auto& g : geom_) v += g.volume;
    return v;
}

} // namespace surfnsch
