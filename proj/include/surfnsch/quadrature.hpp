/// @file quadrature.hpp
/// @brief Reference quadrature rules on the unit triangle and unit tetrahedron.
#pragma once

#include <array>
#include <vector>

namespace surfnsch {

/// Quadrature rule on a reference simplex, stored in barycentric coordinates.
/// Triangle rules use bary[0..2] (bary[3] = 0); tet rules use bary[0..3].
/// Weights sum to 1 and are scaled by the physical cell measure at use sites.
struct QuadRule {
    int degree = 0; ///< declared polynomial exactness
    std::vector<std::array<double, 4>> bary;
    std::vector<double> weight;
    int size() const { return static_cast<int>(weight.size()); }
};

/// Triangle rule exact for polynomials of at least the requested degree (2 or 4 supported).
const QuadRule& triangle_rule(int degree);

/// Tetrahedron rule exact for polynomials of at least the requested degree (2 or 4 supported).
const QuadRule& tet_rule(int degree);

/// Gauss-Jacobi rule with n points for \int_0^1 f(x) (1-x)^alpha dx (Golub-Welsch).
/// Exposed for unit testing of the conical-product construction.
void gauss_jacobi01(int n, int alpha, std::vector<double>& x, std::vector<double>& w);

} // namespace surfnsch
