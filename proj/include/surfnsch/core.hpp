/// @file core.hpp
/// @brief Shared basic types, error categories, and small utilities.
#pragma once

#include <Eigen/Dense>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace surfnsch {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using VectorXd = Eigen::VectorXd;

/// Error with a category used by the CLI to choose an exit code.
class Error : public std::runtime_error {
public:
    enum class Kind { config, solver, geometry, internal };
    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

inline Error config_error(const std::string& msg) { return Error(Error::Kind::config, msg); }
inline Error solver_error(const std::string& msg) { return Error(Error::Kind::solver, msg); }
inline Error geometry_error(const std::string& msg) { return Error(Error::Kind::geometry, msg); }
inline Error internal_error(const std::string& msg) { return Error(Error::Kind::internal, msg); }

/// Tangential projector P = I - n n^T for a unit vector n.
inline Mat3 tangential_projector(const Vec3& n) { return Mat3::Identity() - n * n.transpose(); }

/// Deterministic shortest-ish float formatting (17 significant digits, locale-free).
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// Wall-clock stopwatch.
class Timer {
public:
    Timer() : start_(clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(clock::now() - start_).count();
    }
    void reset() { start_ = clock::now(); }

private:
    using clock = std::chrono::steady_clock;
    clock::time_point start_;
};

/// Minimal logging to stderr; keeps runs quiet unless something is noteworthy.
void log_info(const std::string& msg);
void log_warn(const std::string& msg);

} // namespace surfnsch
