#pragma once
/// @file forms_reference.hpp
/// @brief Serial reference assembly of every bilinear form and load vector,
///        one operator per call.  Deliberately straightforward (dense local
///        blocks, explicit small-matrix algebra, triplet insertion); used to
///        validate the optimized combined sweeps and by one-off solves where
///        performance is irrelevant.
///
/// Conventions: vector spaces store components interleaved (3*dof + k);
/// overline denotes the tangential part; all surface integrals run over the
/// discrete surface carried by SurfaceGeometry, volume integrals over the
/// full active tets via its bulk points.

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Sparse>

#include "surfnsch/cut_geometry.hpp"
#include "surfnsch/fe_space.hpp"
#include "surfnsch/material.hpp"

namespace surfnsch {

using SpMat = Eigen::SparseMatrix<double>;

namespace refforms {

/// Per-surface-qp evaluation of a scalar FE function (cell-major qp order).
std::vector<double> scalar_at_qp(const SurfaceGeometry& geom, const FESpace& space,
                                 const VectorXd& coeffs);

/// Surface mass matrix (phi_i, phi_j).
SpMat mass_scalar(const SurfaceGeometry& geom, const FESpace& space);

/// Surface stiffness (grad_G phi_i, grad_G phi_j).
SpMat stiff_surface_scalar(const SurfaceGeometry& geom, const FESpace& space);

/// Volume normal-gradient stabilisation (n.grad phi_i, n.grad phi_j).
SpMat stab_normal_scalar(const SurfaceGeometry& geom, const FESpace& space);

/// Volume full-gradient stabilisation (grad phi_i, grad phi_j).
SpMat stab_full_scalar(const SurfaceGeometry& geom, const FESpace& space);

/// Transport matrix (w phi_j, grad_G phi_i) for a given vector field w.
SpMat adv_scalar(const SurfaceGeometry& geom, const FESpace& space, const FEFunction& w);

/// Projected velocity mass matrix (rho u_bar, v_bar) with per-qp density.
SpMat mass_velocity(const SurfaceGeometry& geom, const FESpace& vspace,
                    const std::vector<double>& rho_qp);

/// Viscous + penalty + volume-stabilisation + grad-div form:
/// 2 eta (E_s(u_bar), E_s(v_bar)) + tau (n.u, n.v) + beta_u (n.grad u, n.grad v)
/// + graddiv (div_G u, div_G v).
SpMat a_form(const SurfaceGeometry& geom, const FESpace& vspace,
             const std::vector<double>& eta_qp, double tau, double beta_u, double graddiv);

/// Convective form rho v^T (grad_G u_bar) w + 1/2 rhohat (div_G w_bar) u_bar.v_bar.
SpMat c_form(const SurfaceGeometry& geom, const FESpace& vspace,
             const std::vector<double>& rho_qp, const std::vector<double>& rhohat_qp,
             const FEFunction& w);

/// Pressure gradient coupling b(v, q) = (v, grad_G q); rows = velocity dofs,
/// cols = pressure dofs.
SpMat b_form(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& pspace);

/// Diffusive momentum-flux matrix acting on the unknown velocity:
/// T[(v),(u)] = mobility * ((grad_G(theta u_bar)) grad_G mu, theta v).
/// theta and mu are scalar FE coefficient fields.
SpMat theta_flux(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& cspace,
                 const VectorXd& theta_coeffs, const VectorXd& mu_coeffs, double mobility);

/// Load (f, v) for a vector-valued f given at physical points.
VectorXd load_vector(const SurfaceGeometry& geom, const FESpace& vspace,
                     const std::function<Vec3(const Vec3&)>& f);

/// Load (f, v) for a scalar f.
VectorXd load_scalar(const SurfaceGeometry& geom, const FESpace& space,
                     const std::function<double(const Vec3&)>& f);

/// Line-tension load sigma * (c grad_G mu, v).
VectorXd line_tension(const SurfaceGeometry& geom, const FESpace& vspace, const FESpace& cspace,
                      const VectorXd& c_coeffs, const VectorXd& mu_coeffs, double sigma);

/// Chemistry load (f0'_trunc(c), phi_i) evaluated pointwise at the qp.
VectorXd f0prime_load(const SurfaceGeometry& geom, const FESpace& space, const MaterialLaws& laws,
                      const VectorXd& c_coeffs);

}  // namespace refforms
}  // namespace surfnsch
