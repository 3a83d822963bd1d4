/// @file forms_reference.cpp
#include "surfnsch/forms_reference.hpp"

#include "forms_common.hpp"

namespace surfnsch::refforms {

using detail::Basis;
using detail::QpGeom;
using Trip = Eigen::Triplet<double>;

namespace {

/// Explicit surface rate-of-strain tensor of the tangential part of the
/// basis field phi_i e_k:  E_s = sym(grad_G u) - (u.n) S with
/// grad_G u = (P e_k)(P g_i)^T.
Mat3 basis_strain(const QpGeom& qp, double phi, const Vec3& grad, int k) {
    const Vec3 Pe = qp.P.col(k);
    const Vec3 Pg = qp.P * grad;
    const Mat3 G = Pe * Pg.transpose();
    return 0.5 * (G + G.transpose()) - phi * qp.n[k] * qp.S;
}

/// grad_G of the tangential part of phi_j e_l as a full matrix.
Mat3 basis_tangential_grad(const QpGeom& qp, double phi, const Vec3& grad, int l) {
    return (qp.P.col(l)) * (qp.P * grad).transpose() - phi * qp.n[l] * qp.S;
}

/// div_G of the tangential part of a vector field with Jacobian J and value w:
/// div_G(w_bar) = tr(P J P) - (w.n) tr(S).
double div_tangential(const QpGeom& qp, const Vec3& w, const Mat3& J) {
    return (qp.P * J * qp.P).trace() - w.dot(qp.n) * qp.trS;
}

template <class Fill>
SpMat assemble_scalar_surface(const SurfaceGeometry& geom, const FESpace& space, Fill&& fill) {
    const ActiveMesh& mesh = space.mesh();
    std::vector<Trip> trips;
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const int nd = space.n_cell_dofs();
        double local[10][10] = {};
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(space.order(), mesh.geom(c), qp.x);
            fill(qp, b, c, local);
        }
        const auto& cd = space.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                if (local[i][j] != 0.0) trips.emplace_back(cd[i], cd[j], local[i][j]);
    }
    SpMat A(space.n_dofs(), space.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

template <class Fill>
SpMat assemble_scalar_bulk(const SurfaceGeometry& geom, const FESpace& space, Fill&& fill) {
    const ActiveMesh& mesh = space.mesh();
    std::vector<Trip> trips;
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const int nd = space.n_cell_dofs();
        double local[10][10] = {};
        for (int k = 0; k < geom.bulk_per_cell; ++k) {
            const int q = c * geom.bulk_per_cell + k;
            const Vec3 x(geom.bqx[q], geom.bqy[q], geom.bqz[q]);
            const Vec3 n(geom.bnx[q], geom.bny[q], geom.bnz[q]);
            b.eval(space.order(), mesh.geom(c), x);
            fill(geom.bqw[q], n, b, local);
        }
        const auto& cd = space.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                if (local[i][j] != 0.0) trips.emplace_back(cd[i], cd[j], local[i][j]);
    }
    SpMat A(space.n_dofs(), space.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

}  // namespace

std::vector<double> scalar_at_qp(const SurfaceGeometry& geom, const FESpace& space,
                                 const VectorXd& coeffs) {
    const ActiveMesh& mesh = space.mesh();
    std::vector<double> out(geom.n_qp());
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c)
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            const Vec3 x(geom.qx[q], geom.qy[q], geom.qz[q]);
            b.eval(space.order(), mesh.geom(c), x);
            out[q] = b.value(coeffs.data(), space.cell_dofs(c));
        }
    return out;
}

SpMat mass_scalar(const SurfaceGeometry& geom, const FESpace& space) {
    return assemble_scalar_surface(
        geom, space, [&space](const QpGeom& qp, const Basis& b, int, double local[10][10]) {
            for (int i = 0; i < space.n_cell_dofs(); ++i)
                for (int j = 0; j < space.n_cell_dofs(); ++j)
                    local[i][j] += qp.w * b.phi[i] * b.phi[j];
        });
}

SpMat stiff_surface_scalar(const SurfaceGeometry& geom, const FESpace& space) {
    return assemble_scalar_surface(
        geom, space, [&space](const QpGeom& qp, const Basis& b, int, double local[10][10]) {
            Vec3 pg[10];
            for (int i = 0; i < space.n_cell_dofs(); ++i) pg[i] = qp.P * b.grad[i];
            for (int i = 0; i < space.n_cell_dofs(); ++i)
                for (int j = 0; j < space.n_cell_dofs(); ++j)
                    local[i][j] += qp.w * pg[i].dot(pg[j]);
        });
}

SpMat stab_normal_scalar(const SurfaceGeometry& geom, const FESpace& space) {
    return assemble_scalar_bulk(
        geom, space, [&space](double w, const Vec3& n, const Basis& b, double local[10][10]) {
            for (int i = 0; i < space.n_cell_dofs(); ++i)
                for (int j = 0; j < space.n_cell_dofs(); ++j)
                    local[i][j] += w * n.dot(b.grad[i]) * n.dot(b.grad[j]);
        });
}

SpMat stab_full_scalar(const SurfaceGeometry& geom, const FESpace& space) {
    return assemble_scalar_bulk(
        geom, space, [&space](double w, const Vec3&, const Basis& b, double local[10][10]) {
            for (int i = 0; i < space.n_cell_dofs(); ++i)
                for (int j = 0; j < space.n_cell_dofs(); ++j)
                    local[i][j] += w * b.grad[i].dot(b.grad[j]);
        });
}

SpMat adv_scalar(const SurfaceGeometry& geom, const FESpace& space, const FEFunction& w) {
    const FESpace& wspace = *w.space;
    return assemble_scalar_surface(
        geom, space,
        [&space, &w, &wspace](const QpGeom& qp, const Basis& b, int c, double local[10][10]) {
            Basis bw;
            bw.eval(wspace.order(), wspace.mesh().geom(c), qp.x);
            const Vec3 wv = bw.value_vec(w.coeffs.data(), wspace.cell_dofs(c));
            for (int i = 0; i < space.n_cell_dofs(); ++i) {
                const double wdotpg = wv.dot(qp.P * b.grad[i]);
                for (int j = 0; j < space.n_cell_dofs(); ++j)
                    local[i][j] += qp.w * b.phi[j] * wdotpg;
            }
        });
}

SpMat mass_velocity(const SurfaceGeometry& geom, const FESpace& vspace,
                    const std::vector<double>& rho_qp) {
    const ActiveMesh& mesh = vspace.mesh();
    std::vector<Trip> trips;
    Basis b;
    const int nd = vspace.n_cell_dofs();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        Eigen::Matrix<double, 30, 30> local = Eigen::Matrix<double, 30, 30>::Zero();
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(vspace.order(), mesh.geom(c), qp.x);
            const double rw = qp.w * rho_qp[q];
            for (int i = 0; i < nd; ++i)
                for (int j = 0; j < nd; ++j) {
                    const double f = rw * b.phi[i] * b.phi[j];
                    for (int k = 0; k < 3; ++k)
                        for (int l = 0; l < 3; ++l) local(3 * i + k, 3 * j + l) += f * qp.P(k, l);
                }
        }
        const auto& cd = vspace.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        trips.emplace_back(3 * cd[i] + k, 3 * cd[j] + l,
                                           local(3 * i + k, 3 * j + l));
    }
    SpMat A(3 * vspace.n_dofs(), 3 * vspace.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

SpMat a_form(const SurfaceGeometry& geom, const FESpace& vspace,
             const std::vector<double>& eta_qp, double tau, double beta_u, double graddiv) {
    const ActiveMesh& mesh = vspace.mesh();
    std::vector<Trip> trips;
    Basis b;
    const int nd = vspace.n_cell_dofs();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        Eigen::Matrix<double, 30, 30> local = Eigen::Matrix<double, 30, 30>::Zero();
        // surface terms
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(vspace.order(), mesh.geom(c), qp.x);
            Mat3 E[30];
            double divg[30];
            for (int i = 0; i < nd; ++i)
                for (int k = 0; k < 3; ++k) {
                    E[3 * i + k] = basis_strain(qp, b.phi[i], b.grad[i], k);
                    divg[3 * i + k] = (qp.P * b.grad[i])[k];  // div_G(phi_i e_k)
                }
            for (int i = 0; i < nd; ++i)
                for (int k = 0; k < 3; ++k)
                    for (int j = 0; j < nd; ++j)
                        for (int l = 0; l < 3; ++l) {
                            double v = 2.0 * eta_qp[q] *
                                       E[3 * i + k].cwiseProduct(E[3 * j + l]).sum();
                            v += tau * qp.n[k] * qp.n[l] * b.phi[i] * b.phi[j];
                            v += graddiv * divg[3 * i + k] * divg[3 * j + l];
                            local(3 * i + k, 3 * j + l) += qp.w * v;
                        }
        }
        // volume normal-gradient stabilisation
        for (int kq = 0; kq < geom.bulk_per_cell; ++kq) {
            const int q = c * geom.bulk_per_cell + kq;
            const Vec3 x(geom.bqx[q], geom.bqy[q], geom.bqz[q]);
            const Vec3 n(geom.bnx[q], geom.bny[q], geom.bnz[q]);
            b.eval(vspace.order(), mesh.geom(c), x);
            for (int i = 0; i < nd; ++i)
                for (int j = 0; j < nd; ++j) {
                    const double v = beta_u * n.dot(b.grad[i]) * n.dot(b.grad[j]);
                    for (int k = 0; k < 3; ++k)
                        local(3 * i + k, 3 * j + k) += geom.bqw[q] * v;
                }
        }
        const auto& cd = vspace.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        trips.emplace_back(3 * cd[i] + k, 3 * cd[j] + l,
                                           local(3 * i + k, 3 * j + l));
    }
    SpMat A(3 * vspace.n_dofs(), 3 * vspace.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

SpMat c_form(const SurfaceGeometry& geom, const FESpace& vspace,
             const std::vector<double>& rho_qp, const std::vector<double>& rhohat_qp,
             const FEFunction& w) {
    const ActiveMesh& mesh = vspace.mesh();
    const FESpace& wspace = *w.space;
    std::vector<Trip> trips;
    Basis b, bw;
    const int nd = vspace.n_cell_dofs();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        Eigen::Matrix<double, 30, 30> local = Eigen::Matrix<double, 30, 30>::Zero();
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(vspace.order(), mesh.geom(c), qp.x);
            bw.eval(wspace.order(), wspace.mesh().geom(c), qp.x);
            const Vec3 wv = bw.value_vec(w.coeffs.data(), wspace.cell_dofs(c));
            const Mat3 Jw = bw.jacobian(w.coeffs.data(), wspace.cell_dofs(c));
            const double divw = div_tangential(qp, wv, Jw);
            for (int j = 0; j < nd; ++j)
                for (int l = 0; l < 3; ++l) {
                    // (grad_G u_bar) w for the basis function phi_j e_l
                    const Vec3 gu_w = basis_tangential_grad(qp, b.phi[j], b.grad[j], l) * wv;
                    for (int i = 0; i < nd; ++i)
                        for (int k = 0; k < 3; ++k) {
                            double v = rho_qp[q] * b.phi[i] * gu_w[k];
                            v += 0.5 * rhohat_qp[q] * divw * b.phi[i] * b.phi[j] * qp.P(k, l);
                            local(3 * i + k, 3 * j + l) += qp.w * v;
                        }
                }
        }
        const auto& cd = vspace.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        trips.emplace_back(3 * cd[i] + k, 3 * cd[j] + l,
                                           local(3 * i + k, 3 * j + l));
    }
    SpMat A(3 * vspace.n_dofs(), 3 * vspace.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

SpMat b_form(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& pspace) {
    const ActiveMesh& mesh = vspace.mesh();
    std::vector<Trip> trips;
    Basis bu, bp;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        double local[30][4] = {};
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            bu.eval(vspace.order(), mesh.geom(c), qp.x);
            bp.eval(pspace.order(), mesh.geom(c), qp.x);
            for (int j = 0; j < pspace.n_cell_dofs(); ++j) {
                const Vec3 pg = qp.P * bp.grad[j];
                for (int i = 0; i < vspace.n_cell_dofs(); ++i)
                    for (int k = 0; k < 3; ++k)
                        local[3 * i + k][j] += qp.w * bu.phi[i] * pg[k];
            }
        }
        const auto& cu = vspace.cell_dofs(c);
        const auto& cp = pspace.cell_dofs(c);
        for (int i = 0; i < vspace.n_cell_dofs(); ++i)
            for (int k = 0; k < 3; ++k)
                for (int j = 0; j < pspace.n_cell_dofs(); ++j)
                    trips.emplace_back(3 * cu[i] + k, cp[j], local[3 * i + k][j]);
    }
    SpMat B(3 * vspace.n_dofs(), pspace.n_dofs());
    B.setFromTriplets(trips.begin(), trips.end());
    return B;
}

SpMat theta_flux(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& cspace,
                 const VectorXd& theta_coeffs, const VectorXd& mu_coeffs, double mobility) {
    const ActiveMesh& mesh = vspace.mesh();
    std::vector<Trip> trips;
    Basis b, bc;
    const int nd = vspace.n_cell_dofs();
    for (int c = 0; c < mesh.n_cells(); ++c) {
        Eigen::Matrix<double, 30, 30> local = Eigen::Matrix<double, 30, 30>::Zero();
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(vspace.order(), mesh.geom(c), qp.x);
            bc.eval(cspace.order(), mesh.geom(c), qp.x);
            const auto& cdc = cspace.cell_dofs(c);
            const double th = bc.value(theta_coeffs.data(), cdc);
            const Vec3 gth = qp.P * bc.grad_value(theta_coeffs.data(), cdc);
            const Vec3 d = qp.P * bc.grad_value(mu_coeffs.data(), cdc);
            for (int j = 0; j < nd; ++j)
                for (int l = 0; l < 3; ++l) {
                    // grad_G(theta * phi_j Pe_l) d
                    const Vec3 flux = (qp.P.col(l)) * (th * (qp.P * b.grad[j]) + b.phi[j] * gth).dot(d) -
                                      th * b.phi[j] * qp.n[l] * (qp.S * d);
                    for (int i = 0; i < nd; ++i)
                        for (int k = 0; k < 3; ++k)
                            local(3 * i + k, 3 * j + l) +=
                                qp.w * mobility * th * b.phi[i] * flux[k];
                }
        }
        const auto& cd = vspace.cell_dofs(c);
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < nd; ++j)
                for (int k = 0; k < 3; ++k)
                    for (int l = 0; l < 3; ++l)
                        trips.emplace_back(3 * cd[i] + k, 3 * cd[j] + l,
                                           local(3 * i + k, 3 * j + l));
    }
    SpMat A(3 * vspace.n_dofs(), 3 * vspace.n_dofs());
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

VectorXd load_vector(const SurfaceGeometry& geom, const FESpace& vspace,
                     const std::function<Vec3(const Vec3&)>& f) {
    const ActiveMesh& mesh = vspace.mesh();
    VectorXd F = VectorXd::Zero(3 * vspace.n_dofs());
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto& cd = vspace.cell_dofs(c);
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            const Vec3 x(geom.qx[q], geom.qy[q], geom.qz[q]);
            b.eval(vspace.order(), mesh.geom(c), x);
            const Vec3 fv = geom.qw[q] * f(x);
            for (int i = 0; i < vspace.n_cell_dofs(); ++i)
                for (int k = 0; k < 3; ++k) F[3 * cd[i] + k] += b.phi[i] * fv[k];
        }
    }
    return F;
}

VectorXd load_scalar(const SurfaceGeometry& geom, const FESpace& space,
                     const std::function<double(const Vec3&)>& f) {
    const ActiveMesh& mesh = space.mesh();
    VectorXd F = VectorXd::Zero(space.n_dofs());
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto& cd = space.cell_dofs(c);
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            const Vec3 x(geom.qx[q], geom.qy[q], geom.qz[q]);
            b.eval(space.order(), mesh.geom(c), x);
            const double fv = geom.qw[q] * f(x);
            for (int i = 0; i < space.n_cell_dofs(); ++i) F[cd[i]] += b.phi[i] * fv;
        }
    }
    return F;
}

VectorXd line_tension(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& cspace,
                      const VectorXd& c_coeffs, const VectorXd& mu_coeffs, double sigma) {
    const ActiveMesh& mesh = vspace.mesh();
    VectorXd F = VectorXd::Zero(3 * vspace.n_dofs());
    Basis b, bc;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto& cd = vspace.cell_dofs(c);
        const auto& cdc = cspace.cell_dofs(c);
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            QpGeom qp;
            qp.load(geom, q);
            b.eval(vspace.order(), mesh.geom(c), qp.x);
            bc.eval(cspace.order(), mesh.geom(c), qp.x);
            const double cv = bc.value(c_coeffs.data(), cdc);
            const Vec3 d = qp.P * bc.grad_value(mu_coeffs.data(), cdc);
            for (int i = 0; i < vspace.n_cell_dofs(); ++i)
                for (int k = 0; k < 3; ++k)
                    F[3 * cd[i] + k] += qp.w * sigma * cv * b.phi[i] * d[k];
        }
    }
    return F;
}

VectorXd f0prime_load(const SurfaceGeometry& geom, const FESpace& space, const MaterialLaws& laws,
                      const VectorXd& c_coeffs) {
    const ActiveMesh& mesh = space.mesh();
    VectorXd F = VectorXd::Zero(space.n_dofs());
    Basis b;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const auto& cd = space.cell_dofs(c);
        for (int q = geom.cell_qp_begin[c]; q < geom.cell_qp_begin[c + 1]; ++q) {
            const Vec3 x(geom.qx[q], geom.qy[q], geom.qz[q]);
            b.eval(space.order(), mesh.geom(c), x);
            const double fv = geom.qw[q] * laws.f0_prime_trunc(b.value(c_coeffs.data(), cd));
            for (int i = 0; i < space.n_cell_dofs(); ++i) F[cd[i]] += b.phi[i] * fv;
        }
    }
    return F;
}

}  // namespace surfnsch::refforms
