#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <vector>

#include "cavitycool/coefficients.hpp"
#include "cavitycool/psd.hpp"

namespace cavitycool {

enum class ClampPolicy { project_psd, zero_negative_Dpp };

/// Relative size below which a negative eigenvalue is treated as round-off
/// of the x-p block rather than a genuine loss of positivity.
inline constexpr double significant_clamp_ratio = 1e-2;

struct InitialState {
    bool x_uniform = true;  // uniform over one optical period [0, 2 pi)
    double x0 = 0.0;
    double p0 = 0.0;
    double p_sigma = 0.0;
};

/// Ensemble configuration in scaled units (hbar = k = kappa = 1).
struct SimulationConfig {
    double mass = 500.0;
    ModeChannel pump{PlaneStanding{}, 1.0, 0.5773502691896258, 0.0};
    std::complex<double> alpha = 1.0;
    std::vector<ModeChannel> empty;

    bool conservative = true;
    bool dissipative = true;
    bool absorption = false;
    bool scattering = false;
    ScatteringPattern pattern = ScatteringPattern::isotropic();
    double gamma_abs = 0.0;
    double gamma_sca = 0.0;
    MemoryOptions memory;

    std::size_t trajectories = 1000;
    double dt = 0.1;
    double t_end = 100.0;
    std::size_t record_every = 100;
    std::uint64_t seed = 1;
    ClampPolicy clamp = ClampPolicy::project_psd;
    InitialState init;
    double v_max_expected = 0.0;  // 0: derive from the initial state and the cooling limit
    unsigned threads = 1;
    bool force = false;           // run even if the weak-coupling check fails
    std::size_t histogram_bins = 64;
};

struct LocalSDE {
    std::array<double, 2> drift{};
    std::array<double, 3> D{};  // D_xx, D_xp, D_pp before projection
    Factor2 factor;
    ForceParts force;
    bool memory_warning = false;
    [[nodiscard]] bool significantly_clamped() const {
        return factor.lambda_min < -significant_clamp_ratio * std::abs(factor.lambda_max);
    }
};

/// Drift, diffusion and noise factor at (x, p). Throws DomainError naming the
/// location if any coefficient is not finite.
[[nodiscard]] LocalSDE assemble_local_sde(double x, double p, const SimulationConfig& cfg);

struct EnsembleStats {
    std::vector<double> time;
    std::vector<double> kinetic;      // <p^2/2m>
    std::vector<double> kinetic_sem;  // standard error of the above
    std::vector<double> mean_p;
    std::vector<double> mean_x_mod;   // <x mod pi>
    double altered_fraction = 0.0;    // steps where projection changed D at all
    double clamped_fraction = 0.0;    // steps with a significant negative eigenvalue
    double mean_clamped_magnitude = 0.0;
    std::vector<double> histogram_edges;  // final momentum
    std::vector<std::size_t> histogram_counts;
    std::size_t trajectories = 0;
    std::size_t steps = 0;
    double dt = 0.0;
    bool memory_warning = false;

    /// Time average of <p^2/2m> over records with t >= t_from.
    [[nodiscard]] double window_kinetic(double t_from) const;
};

/// Largest step the invariant allows, together with the bound it came from.
struct StepLimit {
    double dt = 0.0;
    double k_eff = 0.0;
    double v_max = 0.0;
    double rate_bound = 0.0;
    double trap_frequency = 0.0;
};
[[nodiscard]] StepLimit step_limit(const SimulationConfig& cfg);

/// Euler-Maruyama ensemble. Identical (config, seed) give bit-identical
/// statistics for any thread count. Throws TimeStepError if dt exceeds the
/// step limit.
[[nodiscard]] EnsembleStats run_ensemble(const SimulationConfig& cfg);

struct CaptureRow {
    double Delta = 0.0;
    double kv = 0.0;
    double force = 0.0;       // position-averaged, leading order
    double simulated = 0.0;   // mean free-flight impulse rate (first order)
    double simulated_sem = 0.0;
    double second_order = 0.0;  // mean second-order part, for reference
};

struct CaptureOptions {
    double coupling = 0.1;
    double mass = 500.0;
    std::size_t samples = 0;  // 0: analytic curve only
    double window = 1.0;      // flight time per sample
    std::size_t substeps = 16;
    std::uint64_t seed = 1;
};

[[nodiscard]] std::vector<CaptureRow> velocity_capture_scan(const std::vector<double>& kv,
                                                            const std::vector<double>& Delta,
                                                            const CaptureOptions& opt);

}  // namespace cavitycool
