#pragma once

#include <vector>

#include "cavitycool/modes.hpp"

namespace cavitycool {

/// Multimode friction of a confocal resonator pumped by a Gaussian running
/// wave along y with the fundamental waist. Rates in units of kappa,
/// lengths in 1/k. Every degenerate mode has linewidth kappa, detuning
/// Delta and effective coupling |U alpha| = coupling.
struct ConfocalFrictionConfig {
    ConfocalSetup setup;
    double Delta = 0.5773502691896258;  // 1/sqrt(3)
    double coupling = 0.1;
    double omega_r = 1e-3;
    double average_halfwidth = 4.0;  // transverse box half-width in units of w0
    int min_points = 64;
    int max_points = 1024;
    double rel_tol = 1e-4;
    bool include_second_order = true;
};

/// <|f_0|^2 |u_m|^2> over the transverse box (x = 0), one value per mode.
struct TransverseOverlaps {
    std::vector<double> overlap;
    int points = 0;             // per axis, after convergence
    double last_change = 0.0;   // relative change of the final doubling
    bool converged = false;
};

[[nodiscard]] TransverseOverlaps transverse_overlaps(const ConfocalFrictionConfig& cfg,
                                                     const std::vector<LaguerreGaussianStanding>& modes);
/// Same quantity by direct evaluation of the mode functions at `points` per
/// axis, for cross-checking the recurrence-based route.
[[nodiscard]] std::vector<double> transverse_overlaps_direct(const ConfocalFrictionConfig& cfg,
                                                             const std::vector<LaguerreGaussianStanding>& modes,
                                                             int points);

struct ConfocalProfile {
    std::vector<double> kx;
    std::vector<double> beta;         // total friction, kappa units
    std::vector<double> beta_first;   // first order in omega_r only
    std::size_t modes = 0;
    TransverseOverlaps overlaps;
};

[[nodiscard]] ConfocalProfile confocal_friction_profile(const ConfocalFrictionConfig& cfg, int max_order,
                                                        const std::vector<double>& kx);

struct ConfocalSweep {
    std::vector<int> max_order;
    std::vector<std::size_t> modes;
    std::vector<double> mean_beta;  // averaged over one period in x
    std::vector<double> relative;   // normalised to the fundamental-only value
    TransverseOverlaps overlaps;
};

/// Position-averaged friction for each transverse-order cap (ascending).
[[nodiscard]] ConfocalSweep confocal_friction_sweep(const ConfocalFrictionConfig& cfg,
                                                    const std::vector<int>& max_orders);

}  // namespace cavitycool
