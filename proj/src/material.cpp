/// @file material.cpp
#include "surfnsch/material.hpp"

#include <cmath>

namespace surfnsch {

namespace {
/// Overflow-safe log(cosh(x)).
double log_cosh(double x) {
    const double a = std::abs(x);
    if (a > 30.0) return a - std::log(2.0) + std::log1p(std::exp(-2.0 * a));
    return std::log(std::cosh(a));
}
}  // namespace

MaterialLaws::MaterialLaws(const MaterialParams& p) {
    if (!(p.rho1 > 0.0) || !(p.rho2 > 0.0))
        throw config_error("MaterialLaws: densities must be positive");
    if (!(p.eta1 > 0.0) || !(p.eta2 > 0.0))
        throw config_error("MaterialLaws: viscosities must be positive");
    if (!(p.alpha_smooth > 0.0))
        throw config_error("MaterialLaws: alpha_smooth must be positive");
    if (!(p.alpha_trunc > 1.0))
        throw config_error("MaterialLaws: alpha_trunc must exceed 1");

    relabeled_ = p.rho1 < p.rho2;
    if (relabeled_) {
        rho_heavy_ = p.rho2;
        rho_light_ = p.rho1;
        eta_heavy_ = p.eta2;
        eta_light_ = p.eta1;
    } else {
        rho_heavy_ = p.rho1;
        rho_light_ = p.rho2;
        eta_heavy_ = p.eta1;
        eta_light_ = p.eta2;
    }
    alpha_ = p.alpha_smooth;
    // The smoothed density tends to rho_light - 0.5*drho*alpha*ln 2 deep in
    // the light phase; require that limit to stay positive.
    if (rho_light_ - 0.5 * (rho_heavy_ - rho_light_) * alpha_ * std::log(2.0) <= 0.0)
        throw config_error("MaterialLaws: alpha_smooth too large for this density ratio "
                           "(smoothed density would lose positivity)");
    c_lo_ = 0.5 * (1.0 - p.alpha_trunc);
    c_hi_ = 0.5 * (1.0 + p.alpha_trunc);
    L_ = 0.25 * (3.0 * p.alpha_trunc * p.alpha_trunc - 1.0);
}

double MaterialLaws::rho_cutoff(double c) const {
    const double m = heavy_fraction(c);
    if (m <= 0.0) return rho_light_;
    return m * rho_heavy_ + (1.0 - m) * rho_light_;
}

double MaterialLaws::eta_cutoff(double c) const {
    const double m = heavy_fraction(c);
    if (m <= 0.0) return eta_light_;
    return m * eta_heavy_ + (1.0 - m) * eta_light_;
}

double MaterialLaws::rho_smooth(double c) const {
    const double m = heavy_fraction(c);
    const double drho = rho_heavy_ - rho_light_;
    // antiderivative of theta2(m) = drho/2 (tanh(m/alpha) + 1), zero at m = 0
    return 0.5 * drho * (alpha_ * log_cosh(m / alpha_) + m) + rho_light_;
}

double MaterialLaws::theta2(double c) const {
    const double m = heavy_fraction(c);
    const double drho = rho_heavy_ - rho_light_;
    return 0.5 * drho * (std::tanh(m / alpha_) + 1.0);
}

double MaterialLaws::f0_trunc(double c) const {
    if (c > c_hi_) {
        const double d = c - c_hi_;
        return f0(c_hi_) + f0_prime(c_hi_) * d + 0.5 * L_ * d * d;
    }
    if (c < c_lo_) {
        const double d = c - c_lo_;
        return f0(c_lo_) + f0_prime(c_lo_) * d + 0.5 * L_ * d * d;
    }
    return f0(c);
}

double MaterialLaws::f0_prime_trunc(double c) const {
    if (c > c_hi_) return f0_prime(c_hi_) + L_ * (c - c_hi_);
    if (c < c_lo_) return f0_prime(c_lo_) + L_ * (c - c_lo_);
    return f0_prime(c);
}

}  // namespace surfnsch
