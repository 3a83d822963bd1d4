/// @file cut_geometry.cpp
/// @brief Marching tetrahedra on the active band and quadrature setup.

#include "surfnsch/cut_geometry.hpp"

#include <cmath>

#include "surfnsch/quadrature.hpp"

namespace surfnsch {

namespace {

/// Strict lexicographic order on coordinates; used to evaluate the edge cut
/// in a direction-independent way so neighbouring tets produce bitwise
/// identical cut points.
bool lex_less(const Vec3& a, const Vec3& b) {
    for (int k = 0; k < 3; ++k) {
        if (a[k] < b[k]) return true;
        if (a[k] > b[k]) return false;
    }
    return false;
}

Vec3 cut_point(Vec3 pa, double fa, Vec3 pb, double fb) {
    if (lex_less(pb, pa)) {
        std::swap(pa, pb);
        std::swap(fa, fb);
    }
    const double t = fa / (fa - fb);  // fa, fb have opposite (nonzero) signs
    return pa + t * (pb - pa);
}

struct Marcher {
    const LevelSet& ls;
    double h;          ///< background mesh size, sets the nudge and area tolerances
    int cell = -1;
    const TriVisitor& visit;

    double nudged_phi(const Vec3& x) const {
        double p = ls.phi(x);
        if (p == 0.0) p = 1e-12 * h;
        return p;
    }

    void emit(const Vec3& a, const Vec3& b, const Vec3& c) const {
        const Vec3 ab = b - a, ac = c - a;
        const Vec3 cr = ab.cross(ac);
        const double area = 0.5 * cr.norm();
        if (area < 1e-16 * h * h) return;  // sliver from a near-vertex cut
        std::array<Vec3, 3> tri{a, b, c};
        const Vec3 centroid = (a + b + c) / 3.0;
        if (cr.dot(ls.grad(centroid)) < 0.0) std::swap(tri[1], tri[2]);
        visit(cell, tri);
    }

    /// Linear marching rule on a single (sub-)tetrahedron.
    void march_one(const std::array<Vec3, 4>& v, const std::array<double, 4>& f) const {
        std::array<int, 4> pos{}, neg{};
        int npos = 0, nneg = 0;
        for (int i = 0; i < 4; ++i) {
            if (f[i] > 0.0)
                pos[npos++] = i;
            else
                neg[nneg++] = i;
        }
        if (npos == 0 || nneg == 0) return;

        if (npos == 1 || nneg == 1) {
            const int lone = (npos == 1) ? pos[0] : neg[0];
            const std::array<int, 3> rest = (npos == 1)
                                                ? std::array<int, 3>{neg[0], neg[1], neg[2]}
                                                : std::array<int, 3>{pos[0], pos[1], pos[2]};
            const Vec3 p0 = cut_point(v[lone], f[lone], v[rest[0]], f[rest[0]]);
            const Vec3 p1 = cut_point(v[lone], f[lone], v[rest[1]], f[rest[1]]);
            const Vec3 p2 = cut_point(v[lone], f[lone], v[rest[2]], f[rest[2]]);
            emit(p0, p1, p2);
            return;
        }

        // 2|2 case: quad with vertices on edges (i,k),(i,l),(j,l),(j,k) in
        // cyclic order, split along one diagonal.
        const int i = pos[0], j = pos[1], k = neg[0], l = neg[1];
        const Vec3 q0 = cut_point(v[i], f[i], v[k], f[k]);
        const Vec3 q1 = cut_point(v[i], f[i], v[l], f[l]);
        const Vec3 q2 = cut_point(v[j], f[j], v[l], f[l]);
        const Vec3 q3 = cut_point(v[j], f[j], v[k], f[k]);
        emit(q0, q1, q2);
        emit(q0, q2, q3);
    }

    /// 8-way subdivision: 4 corner tets plus the interior octahedron split
    /// along the fixed diagonal (m01, m23).  The level set is re-evaluated
    /// (and nudged) at every new vertex, so neighbouring cells agree bitwise
    /// on shared sub-edges.
    void subdivide(const std::array<Vec3, 4>& v, const std::array<double, 4>& f,
                   int depth) const {
        if (depth == 0) {
            march_one(v, f);
            return;
        }
        const Vec3 m01 = 0.5 * (v[0] + v[1]), m02 = 0.5 * (v[0] + v[2]),
                   m03 = 0.5 * (v[0] + v[3]), m12 = 0.5 * (v[1] + v[2]),
                   m13 = 0.5 * (v[1] + v[3]), m23 = 0.5 * (v[2] + v[3]);
        const double f01 = nudged_phi(m01), f02 = nudged_phi(m02), f03 = nudged_phi(m03),
                     f12 = nudged_phi(m12), f13 = nudged_phi(m13), f23 = nudged_phi(m23);

        subdivide({v[0], m01, m02, m03}, {f[0], f01, f02, f03}, depth - 1);
        subdivide({v[1], m01, m12, m13}, {f[1], f01, f12, f13}, depth - 1);
        subdivide({v[2], m02, m12, m23}, {f[2], f02, f12, f23}, depth - 1);
        subdivide({v[3], m03, m13, m23}, {f[3], f03, f13, f23}, depth - 1);

        subdivide({m01, m23, m02, m03}, {f01, f23, f02, f03}, depth - 1);
        subdivide({m01, m23, m03, m13}, {f01, f23, f03, f13}, depth - 1);
        subdivide({m01, m23, m13, m12}, {f01, f23, f13, f12}, depth - 1);
        subdivide({m01, m23, m12, m02}, {f01, f23, f12, f02}, depth - 1);
    }
};

}  // namespace

void march_surface(const ActiveMesh& mesh, const LevelSet& ls, int sublevels,
                   const TriVisitor& visit) {
    if (sublevels < 0 || sublevels > 8)
        throw config_error("march_surface: sublevels must be in [0, 8]");
    const BackgroundMesh& bg = mesh.background();
    Marcher m{ls, bg.h, -1, visit};
    for (int c = 0; c < mesh.n_cells(); ++c) {
        m.cell = c;
        const auto& tet = mesh.cell_vertices(c);
        std::array<Vec3, 4> v;
        std::array<double, 4> f;
        for (int i = 0; i < 4; ++i) {
            v[i] = bg.vertices[tet[i]];
            f[i] = bg.vertex_phi[tet[i]];  // stored nudged values: matches cell selection
        }
        m.subdivide(v, f, sublevels);
    }
}

double surface_area(const ActiveMesh& mesh, const LevelSet& ls, int sublevels) {
    double area = 0.0;
    march_surface(mesh, ls, sublevels, [&area](int, const std::array<Vec3, 3>& t) {
        area += 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
    });
    return area;
}

double SurfaceGeometry::area() const {
    double a = 0.0;
    for (double w : qw) a += w;
    return a;
}

Mat3 SurfaceGeometry::shape_at(int q) const {
    Mat3 S;
    const double* s = &shape[6 * static_cast<std::size_t>(q)];
    S << s[0], s[1], s[2], s[1], s[3], s[4], s[2], s[4], s[5];
    return S;
}

SurfaceGeometry build_surface_geometry(const ActiveMesh& mesh, const LevelSet& ls,
                                       int sublevels, int surface_degree,
                                       int bulk_degree, bool with_shape) {
    const QuadRule tri_rule = triangle_rule(surface_degree);
    const QuadRule bulk_rule = tet_rule(bulk_degree);
    const BackgroundMesh& bg = mesh.background();
    const double fd_step = 1e-6 * bg.h;
    const int nc = mesh.n_cells();

    SurfaceGeometry g;
    g.cell_qp_begin.assign(nc + 1, 0);
    g.cell_tri_begin.assign(nc + 1, 0);
    g.bulk_per_cell = bulk_rule.size();

    // March cell by cell; cells are visited in order, so flat arrays stay
    // cell-major and the begin offsets can be recorded on the fly.
    int current = 0;
    auto close_cells_up_to = [&](int cell) {
        for (; current < cell; ++current) {
            g.cell_qp_begin[current + 1] = g.n_qp();
            g.cell_tri_begin[current + 1] = g.n_tri();
        }
    };
    march_surface(mesh, ls, sublevels, [&](int cell, const std::array<Vec3, 3>& t) {
        close_cells_up_to(cell);
        for (const Vec3& p : t)
            for (int k = 0; k < 3; ++k) g.tri_xyz.push_back(p[k]);
        const double area = 0.5 * (t[1] - t[0]).cross(t[2] - t[0]).norm();
        for (int q = 0; q < tri_rule.size(); ++q) {
            const auto& l = tri_rule.bary[q];
            const Vec3 x = l[0] * t[0] + l[1] * t[1] + l[2] * t[2];
            const Vec3 n = ls.normal(x);
            g.qx.push_back(x[0]);
            g.qy.push_back(x[1]);
            g.qz.push_back(x[2]);
            g.qw.push_back(tri_rule.weight[q] * area);
            g.nx.push_back(n[0]);
            g.ny.push_back(n[1]);
            g.nz.push_back(n[2]);
            if (with_shape) {
                const Mat3 S = ls.shape_operator(x, fd_step);
                g.shape.push_back(S(0, 0));
                g.shape.push_back(S(0, 1));
                g.shape.push_back(S(0, 2));
                g.shape.push_back(S(1, 1));
                g.shape.push_back(S(1, 2));
                g.shape.push_back(S(2, 2));
            }
        }
    });
    close_cells_up_to(nc);

    // Bulk quadrature covers every active tet in full.
    const std::size_t nb = static_cast<std::size_t>(nc) * bulk_rule.size();
    g.bqx.reserve(nb);
    g.bqy.reserve(nb);
    g.bqz.reserve(nb);
    g.bqw.reserve(nb);
    g.bnx.reserve(nb);
    g.bny.reserve(nb);
    g.bnz.reserve(nb);
    for (int c = 0; c < nc; ++c) {
        const auto& tet = mesh.cell_vertices(c);
        const CellGeom& geom = mesh.geom(c);
        for (int q = 0; q < bulk_rule.size(); ++q) {
            const auto& l = bulk_rule.bary[q];
            Vec3 x = Vec3::Zero();
            for (int i = 0; i < 4; ++i) x += l[i] * bg.vertices[tet[i]];
            const Vec3 n = ls.normal(x);
            g.bqx.push_back(x[0]);
            g.bqy.push_back(x[1]);
            g.bqz.push_back(x[2]);
            g.bqw.push_back(bulk_rule.weight[q] * geom.volume);
            g.bnx.push_back(n[0]);
            g.bny.push_back(n[1]);
            g.bnz.push_back(n[2]);
        }
    }
    return g;
}

}  // namespace surfnsch
