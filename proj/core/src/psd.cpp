#include "cavitycool/psd.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "cavitycool/errors.hpp"

namespace cavitycool {

Factor2 psd_factor_2x2(double a, double b, double c) {
    Factor2 f;
    const double mean = 0.5 * (a + c);
    const double h = 0.5 * (a - c);
    const double r = std::sqrt(h * h + b * b);
    const double l1 = mean + r, l2 = mean - r;  // l1 >= l2
    f.lambda_max = l1;
    f.lambda_min = l2;

    // unit eigenvector for l1; fall back to the axis when already diagonal
    double vx, vy;
    if (r == 0.0) {
        vx = 1.0;
        vy = 0.0;
    } else if (a >= c) {
        vx = l1 - c;
        vy = b;
        const double n = 1.0 / std::sqrt(vx * vx + vy * vy);
        vx *= n;
        vy *= n;
    } else {
        vx = b;
        vy = l1 - a;
        const double n = 1.0 / std::sqrt(vx * vx + vy * vy);
        vx *= n;
        vy *= n;
    }
    const double s1 = l1 > 0.0 ? std::sqrt(l1) : 0.0;
    const double s2 = l2 > 0.0 ? std::sqrt(l2) : 0.0;
    f.altered = l2 < 0.0;
    f.clamped_magnitude = (l1 < 0.0 ? -l1 : 0.0) + (l2 < 0.0 ? -l2 : 0.0);
    // columns: sqrt(l1) v1, sqrt(l2) v2 with v2 = (-vy, vx)
    f.B = {s1 * vx, -s2 * vy, s1 * vy, s2 * vx};
    return f;
}

ProjectionResult project_psd(std::span<const double> D, std::size_t n) {
    if (D.size() != n * n) throw DomainError("matrix size mismatch");
    Eigen::MatrixXd M(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) M(i, j) = 0.5 * (D[i * n + j] + D[j * n + i]);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    Eigen::VectorXd lam = es.eigenvalues();
    ProjectionResult out;
    out.lambda_min = n ? lam.minCoeff() : 0.0;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] < 0.0) {
            out.altered = true;
            out.clamped_magnitude += -lam[i];
            lam[i] = 0.0;
        }
    }
    const Eigen::MatrixXd P = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
    out.matrix.resize(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.matrix[i * n + j] = P(i, j);
    }
    return out;
}

}  // namespace cavitycool
