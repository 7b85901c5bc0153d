#pragma once

#include <complex>
#include <span>
#include <vector>

#include "cavitycool/memory.hpp"
#include "cavitycool/modes.hpp"
#include "cavitycool/params.hpp"

namespace cavitycool {

// All functions here work in scaled units: hbar = k = 1 and rates in units
// of a reference linewidth kappa. Channel couplings U are U_m/kappa and the
// pump amplitude alpha is dimensionless, so |U alpha| is the effective
// coupling in units of kappa.

struct ForceParts {
    double coherent = 0.0;
    double dissipative1 = 0.0;  // first order in hbar
    double dissipative2 = 0.0;  // second order in hbar
    double absorption = 0.0;
    double scattering = 0.0;
    [[nodiscard]] double total() const {
        return coherent + dissipative1 + dissipative2 + absorption + scattering;
    }
};

struct CoefficientField {
    double g_x = 0.0;
    ForceParts g_p;
    double D_pp = 0.0;
    double D_xp = 0.0;
    double D_xx = 0.0;
    bool memory_warning = false;
};

enum class MemoryMethod {
    automatic,   // closed form whenever the integrand is |cos|^2 or |sin|^2
    quadrature,
    closed_form  // throws DomainError if no closed form applies
};

struct MemoryOptions {
    MemoryMethod method = MemoryMethod::automatic;
    double tolerance = 1e-11;
};

/// G_mn for channel m against mode n at one phase-space point.
[[nodiscard]] MemoryResult channel_memory(const ModeChannel& m, const ModeGeometry& n, const PhasePoint& pt,
                                          double mass, const MemoryOptions& opt);

struct DissipativeTerms {
    double force1 = 0.0;
    double force2 = 0.0;
    double D_pp = 0.0;
    double D_xp = 0.0;
    bool warning = false;
};

/// -U |alpha|^2 d|f|^2/dx for the pump channel.
[[nodiscard]] double conservative_force(const ModeChannel& pump, std::complex<double> alpha, const PhasePoint& pt);

/// Single-mode dissipative force (both orders), D_pp and D_xp.
[[nodiscard]] DissipativeTerms dissipative_single(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                                  std::complex<double> alpha, const MemoryOptions& opt = {});

struct MultimodeOptions {
    MemoryOptions memory;
    bool neglect_pump_gradient = false;  // drop d f_0/dx, as for a pump crossing the cavity axis
};

/// Sum over the pumped mode (m = 0) and the empty channels of the cross
/// products f_0^* f_m, each weighted by |U_m alpha|^2.
[[nodiscard]] DissipativeTerms dissipative_multimode(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                                     std::complex<double> alpha, std::span<const ModeChannel> empty,
                                                     const MultimodeOptions& opt = {});

struct FrictionCoefficient {
    double first_order = 0.0;
    double second_order = 0.0;
    [[nodiscard]] double total() const { return first_order + second_order; }
};

/// Low-velocity friction beta(x), split by order in the recoil frequency.
/// With no empty channels this is the single-mode expression.
[[nodiscard]] FrictionCoefficient friction_coefficient(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                                       std::complex<double> alpha,
                                                       std::span<const ModeChannel> empty = {},
                                                       bool neglect_pump_gradient = false);

/// -(3 sqrt 3 / 2) |U0 alpha/kappa|^2 omega_r, the maximum-slope estimate.
[[nodiscard]] Rate averaged_friction_scaling(const ParticleSpecies& species, const CavityGeometry& cavity,
                                             const PumpConfig& pump);
/// Period-averaged counterpart, half of the estimate above.
[[nodiscard]] Rate averaged_friction_period_mean(const ParticleSpecies& species, const CavityGeometry& cavity,
                                                 const PumpConfig& pump);
/// (3 hbar m / 2) |U0 alpha/kappa|^2 kappa omega_r.
[[nodiscard]] MomentumDiffusion averaged_diffusion_scaling(const ParticleSpecies& species,
                                                           const CavityGeometry& cavity, const PumpConfig& pump);
/// Scaled forms: rates in kappa, diffusion in (hbar k)^2 kappa.
[[nodiscard]] double averaged_friction_scaling(double coupling, double omega_r);
[[nodiscard]] double averaged_diffusion_scaling(double coupling, double omega_r);

/// (1/4)(Delta/kappa + kappa/Delta), in units of hbar kappa.
[[nodiscard]] double cooling_limit(double kappa, double Delta);

struct AveragedFP {
    double force = 0.0;  // hbar k kappa
    double D_pp = 0.0;   // (hbar k)^2 kappa
};

/// Position-averaged force and diffusion for a cos mode at Doppler shift kv.
[[nodiscard]] AveragedFP fp_averaged(double kv, double kappa, double Delta, double coupling);
/// Position-resolved momentum diffusion for a cos mode.
[[nodiscard]] double fp_local_diffusion(double kx, double kv, double kappa, double Delta, double coupling);

/// N particles sharing M modes.
struct NParticleSystem {
    std::vector<ModeChannel> modes;  // geometry, kappa_m, Delta_m; U unused
    std::vector<double> U;           // symmetric M x M coupling matrix, row-major
    std::vector<std::complex<double>> alpha;
    double mass = 1.0;

    [[nodiscard]] std::size_t mode_count() const { return modes.size(); }
    [[nodiscard]] double coupling(std::size_t l, std::size_t m) const { return U[l * modes.size() + m]; }
    void validate() const;
};

struct NParticleCoefficients {
    std::size_t particles = 0;
    std::vector<double> g_x;
    std::vector<double> force1;
    std::vector<double> force2;
    std::vector<double> diffusion;  // 2N x 2N row-major over (x_1, p_1, ..., x_N, p_N)
    bool memory_warning = false;

    [[nodiscard]] double D(std::size_t i, std::size_t j) const { return diffusion[i * 2 * particles + j]; }
};

[[nodiscard]] NParticleCoefficients n_particle_coefficients(std::span<const PhasePoint> particles,
                                                            const NParticleSystem& sys,
                                                            const MemoryOptions& opt = {});

/// Multimode channels expressed as an N-particle system: mode 0 is pumped.
[[nodiscard]] NParticleSystem as_n_particle_system(const ModeChannel& pump, std::complex<double> alpha,
                                                   std::span<const ModeChannel> empty, double mass);

struct ScatteringPattern {
    double mean_ux = 0.0;
    double mean_ux2 = 1.0 / 3.0;
    static ScatteringPattern isotropic() { return {0.0, 1.0 / 3.0}; }
    static ScatteringPattern dipole_parallel_x() { return {0.0, 0.25}; }
    void validate() const;
};

struct ExtraTerms {
    double force = 0.0;
    double D_pp = 0.0;
};

/// Recoil from absorbed pump photons; gamma_sca adds the absorption-like
/// half of each scattering event. The force follows the photon flux.
[[nodiscard]] ExtraTerms absorption_terms(const PhasePoint& pt, const ModeGeometry& pump, std::complex<double> alpha,
                                          double gamma_abs, double gamma_sca);
/// Re-emission recoil of Rayleigh-scattered photons with wavenumber k_p.
[[nodiscard]] ExtraTerms scattering_terms(const PhasePoint& pt, const ModeGeometry& pump, std::complex<double> alpha,
                                          double gamma_sca, const ScatteringPattern& pattern, double k_p = 1.0);

enum class PumpOrientation { axial, perpendicular };

/// Position-averaged diffusion contributions. The pump-side recoil of a
/// scattering event (gamma_s in the absorption term) is kept apart from both
/// genuine absorption and the re-emission recoil.
struct DiffusionBudget {
    double cavity = 0.0;            // cavity D_pp at v = 0
    double absorption = 0.0;        // gamma_a part of the absorption term
    double scattering_uptake = 0.0; // gamma_s part of the absorption term
    double scattering = 0.0;        // re-emission recoil
    double absorption_ratio = 0.0;
    double scattering_uptake_ratio = 0.0;
    double scattering_ratio = 0.0;
    double inflation = 1.0;         // total / cavity, the factor on the cooling limit
};

struct BudgetOptions {
    PumpOrientation orientation = PumpOrientation::axial;
    ScatteringPattern pattern = ScatteringPattern::isotropic();
    double pump_waist = 200.0;  // in units of 1/k; only used for the perpendicular pump
};

/// Low-velocity, position-averaged diffusion budget in scaled units.
[[nodiscard]] DiffusionBudget diffusion_budget(const ScaledParameters& s, const BudgetOptions& opt = {});
[[nodiscard]] DiffusionBudget diffusion_budget(const ParticleSpecies& species, const CavityGeometry& cavity,
                                               const PumpConfig& pump, const BudgetOptions& opt = {});

}  // namespace cavitycool
