#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace cavitycool {

/// Factor B with B B^T = D+ for a symmetric 2x2 matrix [[a, b], [b, c]],
/// where D+ keeps the non-negative part of the spectrum.
struct Factor2 {
    std::array<double, 4> B{};  // row-major
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    bool altered = false;              // some eigenvalue was negative
    double clamped_magnitude = 0.0;    // |negative part| removed
};

[[nodiscard]] Factor2 psd_factor_2x2(double a, double b, double c);

struct ProjectionResult {
    std::vector<double> matrix;  // projected, row-major n x n
    double clamped_magnitude = 0.0;
    double lambda_min = 0.0;
    bool altered = false;
};

/// Eigenvalue clamp for a symmetric n x n matrix (row-major).
[[nodiscard]] ProjectionResult project_psd(std::span<const double> D, std::size_t n);

}  // namespace cavitycool
