/// @file quadrature.cpp
#include "surfnsch/quadrature.hpp"

#include "surfnsch/core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace surfnsch {

void gauss_jacobi01(int n, int alpha, std::vector<double>& x, std::vector<double>& w) {
    // Golub-Welsch for the weight (1-t)^alpha on [-1,1] (Jacobi with beta = 0),
    // then map to [0,1] with t01 = (1+t)/2 so that the weight becomes (1-t01)^alpha
    // up to the constant 2^(alpha+1) folded into mu0.
    const double a = static_cast<double>(alpha), b = 0.0;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        double dk = k;
        double denom = (2.0 * dk + a + b) * (2.0 * dk + a + b + 2.0);
        double diag = (k == 0 && a + b == 0.0) ? 0.0 : (b * b - a * a) / denom;
        J(k, k) = diag;
        if (k + 1 < n) {
            double k1 = dk + 1.0;
            double num = 4.0 * k1 * (k1 + a) * (k1 + b) * (k1 + a + b);
            double den = std::pow(2.0 * k1 + a + b, 2) * (2.0 * k1 + a + b + 1.0) *
                         (2.0 * k1 + a + b - 1.0);
            // For a + b = 0 and k1 = ... the general formula remains valid with b = 0.
            double off = std::sqrt(num / den);
            J(k, k + 1) = off;
            J(k + 1, k) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    if (es.info() != Eigen::Success) throw internal_error("gauss_jacobi01: eigensolver failed");
    // mu0 = int_{-1}^{1} (1-t)^alpha dt = 2^(alpha+1)/(alpha+1)
    double mu0 = std::pow(2.0, a + 1.0) / (a + 1.0);
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double node = es.eigenvalues()(i);
        double v0 = es.eigenvectors()(0, i);
        x[i] = 0.5 * (1.0 + node);
        // Map weight to [0,1]: dt = 2 dt01 and (1-t)^alpha = (2(1-t01))^alpha,
        // so the [0,1] weights are the [-1,1] ones divided by 2^(alpha+1).
        w[i] = mu0 * v0 * v0 / std::pow(2.0, a + 1.0);
    }
}

namespace {

QuadRule make_triangle_deg2() {
    QuadRule r;
    r.degree = 2;
    const double a = 2.0 / 3.0, b = 1.0 / 6.0;
    r.bary = {{{a, b, b, 0.0}}, {{b, a, b, 0.0}}, {{b, b, a, 0.0}}};
    r.weight = {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    return r;
}

QuadRule make_triangle_deg4() {
    // Dunavant degree-4 rule, 6 points, all weights positive.
    QuadRule r;
    r.degree = 4;
    const double a1 = 0.445948490915965, b1 = 0.108103018168070, w1 = 0.223381589678011;
    const double a2 = 0.091576213509771, b2 = 0.816847572980459, w2 = 0.109951743655322;
    auto push = [&r](double x, double y, double w) {
        r.bary.push_back({x, y, 1.0 - x - y, 0.0});
        r.weight.push_back(w);
    };
    push(a1, a1, w1);
    push(a1, b1, w1);
    push(b1, a1, w1);
    push(a2, a2, w2);
    push(a2, b2, w2);
    push(b2, a2, w2);
    return r;
}

QuadRule make_tet_deg2() {
    QuadRule r;
    r.degree = 2;
    const double a = 0.585410196624969, b = 0.138196601125011; // (5±3√5)/20, (5-√5)/20
    for (int i = 0; i < 4; ++i) {
        std::array<double, 4> l{b, b, b, b};
        l[i] = a;
        r.bary.push_back(l);
        r.weight.push_back(0.25);
    }
    return r;
}

QuadRule make_tet_conical() {
    // Stroud conical product with 3 Gauss-Jacobi points per collapsed direction:
    // exact for total degree <= 5 on the tetrahedron, 27 points, positive weights.
    // Collapsed map: x = u, y = v (1-u), z = w (1-u)(1-v); the Jacobian
    // (1-u)^2 (1-v) is absorbed into the Jacobi weights (alpha = 2, 1, 0).
    std::vector<double> xu, wu, xv, wv, xw, ww;
    gauss_jacobi01(3, 2, xu, wu);
    gauss_jacobi01(3, 1, xv, wv);
    gauss_jacobi01(3, 0, xw, ww);
    QuadRule r;
    r.degree = 4; // declared; actual exactness is degree 5
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                double x = xu[i];
                double y = xv[j] * (1.0 - x);
                double z = xw[k] * (1.0 - x) * (1.0 - xv[j]);
                r.bary.push_back({1.0 - x - y - z, x, y, z});
                // The product of [0,1] Jacobi weights integrates the Jacobian
                // exactly; total then sums to \int_T 1 / |T| = 1/6 / (1/6) after
                // normalization below.
                r.weight.push_back(wu[i] * wv[j] * ww[k]);
            }
    // Normalize so weights sum to exactly 1 (they sum to 1/6 = |T_ref| before).
    double s = 0.0;
    for (double w : r.weight) s += w;
    for (double& w : r.weight) w /= s;
    return r;
}

} // namespace

const QuadRule& triangle_rule(int degree) {
    static const QuadRule d2 = make_triangle_deg2();
    static const QuadRule d4 = make_triangle_deg4();
    if (degree <= 2) return d2;
    if (degree <= 4) return d4;
    throw config_error("triangle_rule: supported degrees are 2 and 4");
}

const QuadRule& tet_rule(int degree) {
    static const QuadRule d2 = make_tet_deg2();
    static const QuadRule d4 = make_tet_conical();
    if (degree <= 2) return d2;
    if (degree <= 4) return d4;
    throw config_error("tet_rule: supported degrees are 2 and 4");
}

} // namespace surfnsch
