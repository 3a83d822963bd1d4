/// @file level_set.cpp
#include "surfnsch/level_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <iostream>

namespace surfnsch {

void log_info(const std::string& msg) { std::cerr << "[info] " << msg << "\n"; }
void log_warn(const std::string& msg) { std::cerr << "[warn] " << msg << "\n"; }

double LevelSet::lipschitz_bound(const Vec3& lo, const Vec3& hi) const {
    // Sampled bound with a safety factor. Good enough for the smooth algebraic
    // surfaces used here; the mesh builder asserts afterwards that every cut
    // cell reached the requested level, which would catch an underestimate.
    const int n = 5;
    double m = 0.0;
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j)
            for (int k = 0; k <= n; ++k) {
                Vec3 x(lo.x() + (hi.x() - lo.x()) * i / n,
                       lo.y() + (hi.y() - lo.y()) * j / n,
                       lo.z() + (hi.z() - lo.z()) * k / n);
                m = std::max(m, grad(x).norm());
            }
    return 2.0 * m + 1e-12;
}

Vec3 LevelSet::normal(const Vec3& x) const {
    Vec3 g = grad(x);
    double gn = g.norm();
    if (gn < 1e-14)
        throw geometry_error("LevelSet::normal: |grad phi| < 1e-14 at (" + fmt_g17(x.x()) + ", " +
                             fmt_g17(x.y()) + ", " + fmt_g17(x.z()) + ")");
    return g / gn;
}

Mat3 LevelSet::projector(const Vec3& x) const { return tangential_projector(normal(x)); }

Mat3 LevelSet::shape_operator(const Vec3& x, double fd_step) const {
    Mat3 A; // A(i,j) = d n_i / d x_j by central differences of the analytic normal
    for (int j = 0; j < 3; ++j) {
        Vec3 xp = x, xm = x;
        xp[j] += fd_step;
        xm[j] -= fd_step;
        A.col(j) = (normal(xp) - normal(xm)) / (2.0 * fd_step);
    }
    Mat3 P = projector(x);
    Mat3 PAP = P * A * P;
    return 0.5 * (PAP + PAP.transpose());
}

namespace {

class SphereLevelSet final : public LevelSet {
public:
    SphereLevelSet(double radius, const Vec3& center) : r_(radius), c_(center) {}

    double phi(const Vec3& x) const override { return (x - c_).norm() - r_; }

    Vec3 grad(const Vec3& x) const override {
        Vec3 d = x - c_;
        double n = d.norm();
        if (n < 1e-300) return Vec3::Zero(); // singular at the center; never near Gamma
        return d / n;
    }

    double lipschitz_bound(const Vec3&, const Vec3&) const override { return 1.0; }

    std::string name() const override { return "sphere"; }

private:
    double r_;
    Vec3 c_;
};

class TorusLevelSet final : public LevelSet {
public:
    TorusLevelSet(double R, double rmin, double rmax) : R_(R), rmin_(rmin), rmax_(rmax) {}

    double phi(const Vec3& x) const override {
        double u = x.x() * x.x() + x.y() * x.y();
        double r = tube_radius(x.x(), x.y());
        double q = u + x.z() * x.z() + R_ * R_ - r * r;
        return q * q - 4.0 * R_ * R_ * u;
    }

    Vec3 grad(const Vec3& x) const override {
        double u = x.x() * x.x() + x.y() * x.y();
        double s = std::sqrt(u);
        double dr = rmax_ - rmin_;
        double r, drdx = 0.0, drdy = 0.0;
        if (s < 1e-12) {
            r = rmin_ + 0.5 * dr; // on the axis; far from Gamma, derivative irrelevant
        } else {
            r = rmin_ + 0.5 * dr * (1.0 - x.x() / s);
            drdx = -0.5 * dr * (x.y() * x.y()) / (s * s * s);
            drdy = 0.5 * dr * (x.x() * x.y()) / (s * s * s);
        }
        double q = u + x.z() * x.z() + R_ * R_ - r * r;
        double qx = 2.0 * x.x() - 2.0 * r * drdx;
        double qy = 2.0 * x.y() - 2.0 * r * drdy;
        double qz = 2.0 * x.z();
        return Vec3(2.0 * q * qx - 8.0 * R_ * R_ * x.x(),
                    2.0 * q * qy - 8.0 * R_ * R_ * x.y(),
                    2.0 * q * qz);
    }

    std::string name() const override { return "torus"; }

private:
    double tube_radius(double x, double y) const {
        double s = std::sqrt(x * x + y * y);
        if (s < 1e-12) return rmin_ + 0.5 * (rmax_ - rmin_);
        return rmin_ + 0.5 * (rmax_ - rmin_) * (1.0 - x / s);
    }

    double R_, rmin_, rmax_;
};

} // namespace

std::shared_ptr<const LevelSet> make_sphere(double radius, const Vec3& center) {
    if (!(radius > 0.0)) throw config_error("make_sphere: radius must be positive");
    return std::make_shared<SphereLevelSet>(radius, center);
}

std::shared_ptr<const LevelSet> make_torus(double R, double r_min, double r_max) {
    if (!(R > 0.0) || !(r_min > 0.0) || !(r_max >= r_min))
        throw config_error("make_torus: require R > 0, 0 < r_min <= r_max");
    if (r_max >= R) throw config_error("make_torus: require r_max < R (no self-intersection)");
    return std::make_shared<TorusLevelSet>(R, r_min, r_max);
}

} // namespace surfnsch
