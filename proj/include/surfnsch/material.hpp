#pragma once
/// @file material.hpp
/// @brief Phase-dependent material laws: density/viscosity interpolation with
///        cut-offs, the smoothed density law whose derivative is the exact
///        square-root factor of the diffusive momentum flux, and the
///        quadratically truncated double-well potential.
///
/// The solver always works with the user's order parameter c (phase 1
/// fraction).  When the user passes rho1 < rho2 the laws are evaluated on the
/// heavy-phase fraction m = 1 - c internally, and the sign of d(rho)/dc is
/// carried by orientation_sign(); no field is ever transformed.

#include "surfnsch/core.hpp"

namespace surfnsch {

struct MaterialParams {
    double rho1 = 1.0, rho2 = 1.0;  ///< phase densities (phase 1 = c, phase 2 = 1 - c)
    double eta1 = 1.0, eta2 = 1.0;  ///< phase viscosities, paired with the densities
    double alpha_smooth = 0.1;      ///< width of the tanh smoothing of d(rho)/dc
    double alpha_trunc = 2.0;       ///< truncation half-width of the double well (> 1)
};

class MaterialLaws {
public:
    explicit MaterialLaws(const MaterialParams& p);

    bool relabeled() const { return relabeled_; }
    /// Sign of d(rho)/dc: +1 when phase 1 is at least as heavy, else -1.
    double orientation_sign() const { return relabeled_ ? -1.0 : 1.0; }
    double rho_heavy() const { return rho_heavy_; }
    double rho_light() const { return rho_light_; }
    /// Heavy-phase fraction as a function of the order parameter.
    double heavy_fraction(double c) const { return relabeled_ ? 1.0 - c : c; }

    /// Piecewise-linear density, cut off from below at the light density.
    double rho_cutoff(double c) const;
    /// Viscosity, same cut-off rule and phase pairing as the density.
    double eta_cutoff(double c) const;

    /// Smoothed density: the antiderivative of theta2 in the heavy fraction,
    /// normalised so rho_smooth = rho_light at heavy fraction 0.
    double rho_smooth(double c) const;
    /// theta^2 = |d rho_smooth / d m|, the smoothed phase indicator weight.
    double theta2(double c) const;
    double theta(double c) const { return std::sqrt(theta2(c)); }
    /// Signed d rho_smooth / d c (= orientation_sign() * theta2).
    double drho_dc(double c) const { return orientation_sign() * theta2(c); }

    /// Double-well potential f0 = c^2 (1-c)^2 / 4 and its derivative.
    static double f0(double c) { return 0.25 * c * c * (1.0 - c) * (1.0 - c); }
    static double f0_prime(double c) { return c * (c - 1.0) * (c - 0.5); }

    /// Quadratic truncation outside [(1-alpha)/2, (1+alpha)/2]: f0 continues
    /// with constant curvature L, so f0_prime continues linearly with slope L.
    double f0_trunc(double c) const;
    double f0_prime_trunc(double c) const;
    /// L = (3 alpha^2 - 1)/4, the Lipschitz bound of the truncated f0_prime
    /// (used as the default convex-splitting weight gamma_c).
    double lipschitz_L() const { return L_; }

private:
    bool relabeled_ = false;
    double rho_heavy_ = 1.0, rho_light_ = 1.0;
    double eta_heavy_ = 1.0, eta_light_ = 1.0;
    double alpha_ = 0.1;   ///< smoothing width
    double c_lo_ = -0.5, c_hi_ = 1.5;  ///< truncation branch points
    double L_ = 2.75;
};

}  // namespace surfnsch
