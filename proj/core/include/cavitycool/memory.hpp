#pragma once

#include <complex>
#include <span>
#include <utility>
#include <vector>

#include "cavitycool/modes.hpp"

namespace cavitycool {

/// Memory integral G(x,p) = int_0^inf exp(-nu tau) f_m^*(s) f_n(s) dtau along
/// the free past trajectory s = x - p tau / mass, with its x and p
/// derivatives. Scaled units (hbar = k = kappa_ref = 1) are assumed by the
/// callers but not required here.
struct MemoryResult {
    std::complex<double> G;
    std::complex<double> dG_dx;
    std::complex<double> dG_dp;
    double quadrature_error = 0.0;
    double truncation_tau = 0.0;
    bool warning = false;
};

struct MemoryQuery {
    ModeChannel channel;  // f_m with kappa_m, Delta_m
    ModeGeometry pump;    // f_n
    double x = 0.0;
    double p = 0.0;
    double mass = 1.0;
    double y = 0.0;  // transverse coordinates held fixed
    double z = 0.0;
};

inline constexpr double memory_truncation_factor = 40.0;

/// Adaptive quadrature. Throws DomainError for kappa <= 0 or tolerance <= 0;
/// an unreachable tolerance sets `warning`.
[[nodiscard]] MemoryResult memory_integral(const MemoryQuery& q, double tolerance);

/// Closed form for |f|^2 with f = cos(kx) (or sin(kx)).
[[nodiscard]] MemoryResult memory_integral_fp_closed(double x, double p, double mass, double kappa, double Delta,
                                                     Parity parity = Parity::cos, double k = 1.0);

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// G_mn for each particle independently; sums are the caller's business.
[[nodiscard]] std::vector<MemoryResult> per_particle_memory(const ModeChannel& m, const ModeGeometry& n,
                                                            std::span<const PhasePoint> particles, double mass,
                                                            double tolerance);

/// Integrand exp(-nu tau) f_m^* f_n at `count` equally spaced delays, for debugging.
[[nodiscard]] std::vector<std::pair<double, std::complex<double>>> sample_integrand(const MemoryQuery& q,
                                                                                   std::size_t count);

/// Wavenumber of the x-dependence of a mode (0 when it only varies transversely in x).
[[nodiscard]] double axial_wavenumber(const ModeGeometry& g);

}  // namespace cavitycool
