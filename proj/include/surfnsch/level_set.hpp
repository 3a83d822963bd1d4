/// @file level_set.hpp
/// @brief Implicit surface description: level-set function, normals, projectors,
///        and the shape operator obtained from the level-set gradient.
#pragma once

#include "surfnsch/core.hpp"

#include <memory>
#include <string>

namespace surfnsch {

/// A smooth level-set function phi whose zero set is the closed surface Gamma.
/// Conventions: phi < 0 inside, phi > 0 outside; the outward unit normal is
/// n = grad(phi)/|grad(phi)|.
class LevelSet {
public:
    virtual ~LevelSet() = default;

    virtual double phi(const Vec3& x) const = 0;
    virtual Vec3 grad(const Vec3& x) const = 0;
    virtual std::string name() const = 0;

    /// Upper bound for |grad phi| over the axis-aligned box [lo, hi], used by the
    /// refine-toward-surface marking test. Default: sampled on a coarse grid with
    /// a safety factor; analytic surfaces override with sharp values.
    virtual double lipschitz_bound(const Vec3& lo, const Vec3& hi) const;

    /// Unit outward normal. Throws geometry_error when |grad phi| < 1e-14.
    Vec3 normal(const Vec3& x) const;

    /// Tangential projector P(x) = I - n n^T at x.
    Mat3 projector(const Vec3& x) const;

    /// Symmetrized tangential Weingarten map S = sym(P (grad n) P), with grad n
    /// evaluated by central finite differences of the analytic normal field
    /// using the given step (callers pass 1e-6 * h).
    Mat3 shape_operator(const Vec3& x, double fd_step) const;
};

/// Sphere of given radius and center: phi(x) = |x - center| - radius.
std::shared_ptr<const LevelSet> make_sphere(double radius = 1.0, const Vec3& center = Vec3::Zero());

/// Torus with azimuthally varying tube radius,
///   phi = (x^2 + y^2 + z^2 + R^2 - r(x,y)^2)^2 - 4 R^2 (x^2 + y^2),
///   r(x,y) = r_min + 0.5 (r_max - r_min) (1 - x / sqrt(x^2 + y^2)).
/// The tube radius is r_min on the +x side and r_max on the -x side.
std::shared_ptr<const LevelSet> make_torus(double R = 1.0, double r_min = 0.3, double r_max = 0.6);

} // namespace surfnsch
