#pragma once

#include <complex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cavitycool/constants.hpp"
#include "cavitycool/units.hpp"

namespace cavitycool {

struct ParticleSpecies {
    std::string label;
    Mass mass{};
    Polarizability chi{};
    Area sigma_abs{};
    Area sigma_sca{};

    /// Throws DomainError on negative or non-finite fields.
    void validate() const;
};

struct CavityGeometry {
    Volume mode_volume{};
    Length wavelength{};
    Rate kappa{};  // field half-width; photon loss rate is 2*kappa

    [[nodiscard]] Wavenumber wavenumber() const;
    [[nodiscard]] Rate angular_frequency() const;
    void validate() const;
};

struct DerivedRates {
    Rate omega_r{};
    Rate U0{};
    Rate gamma_abs{};
    Rate gamma_sca{};
};

/// Pump drive. The stationary photon number is either given or derived from
/// a laser power, never both.
class PumpConfig {
public:
    static PumpConfig from_photon_number(double n, Rate Delta, std::string mode_id = "pump");
    static PumpConfig from_power(Power p, Rate Delta, std::string mode_id = "pump");

    [[nodiscard]] double photon_number(const CavityGeometry& cavity) const;
    [[nodiscard]] double amplitude(const CavityGeometry& cavity) const;
    [[nodiscard]] bool power_driven() const { return std::holds_alternative<Power>(source_); }
    [[nodiscard]] Rate detuning() const { return Delta_; }
    [[nodiscard]] const std::string& mode_id() const { return mode_id_; }

private:
    PumpConfig(std::variant<Power, double> s, Rate d, std::string id)
        : source_(s), Delta_(d), mode_id_(std::move(id)) {}
    std::variant<Power, double> source_;
    Rate Delta_;
    std::string mode_id_;
};

[[nodiscard]] Rate recoil_frequency(Mass mass, Length wavelength);
[[nodiscard]] Rate coupling_constant(Polarizability chi, Length wavelength, Volume mode_volume);
/// gamma = c*sigma/V. Tabulated rates are quoted as 2*gamma.
[[nodiscard]] Rate photon_rate(Area sigma, Volume mode_volume);

[[nodiscard]] ComplexPolarizability sphere_polarizability(Length radius, std::complex<double> epsilon);
[[nodiscard]] Area absorption_cross_section(Length radius, std::complex<double> epsilon, Length wavelength);
[[nodiscard]] Area rayleigh_cross_section(Length radius, std::complex<double> epsilon, Length wavelength);
/// Rayleigh cross section of a point dipole with real polarizability chi.
[[nodiscard]] Area rayleigh_cross_section(Polarizability chi, Length wavelength);
/// 2*pi*R/lambda; the sphere formulas assume this is small.
[[nodiscard]] double size_parameter(Length radius, Length wavelength);

[[nodiscard]] double pump_photon_number(Power power, Rate kappa, Length wavelength);

[[nodiscard]] DerivedRates derive_rates(const ParticleSpecies& species, const CavityGeometry& cavity);

enum class Verdict { pass, warn, fail };
[[nodiscard]] const char* to_string(Verdict v);

struct ValidityCheck {
    std::string name;
    double ratio = 0.0;
    Verdict verdict = Verdict::pass;
};

struct ValidityReport {
    std::vector<ValidityCheck> checks;
    [[nodiscard]] Verdict overall() const;
    [[nodiscard]] const ValidityCheck& find(const std::string& name) const;
};

inline constexpr double validity_warn_threshold = 0.3;
inline constexpr double validity_fail_threshold = 1.0;

/// Weak-coupling ratios |U0|/kappa, |U0 alpha|/kappa, N|U0 alpha|/kappa and,
/// when a velocity k*v is supplied, the free-flight (shearing) ratio
/// 4|omega_r alpha/kv||U0 alpha/kappa|.
[[nodiscard]] ValidityReport validity_report(const ParticleSpecies& species, const CavityGeometry& cavity,
                                             const PumpConfig& pump, int particle_count = 1,
                                             std::optional<Rate> kv = std::nullopt);

/// Dimensionless parameters in units hbar = k = kappa = 1.
struct ScaledParameters {
    double omega_r = 0.0;   // omega_r / kappa
    double mass = 0.0;      // kappa / (2 omega_r)
    double U0 = 0.0;        // U0 / kappa
    double gamma_abs = 0.0; // gamma_a / kappa
    double gamma_sca = 0.0; // gamma_s / kappa
    double Delta = 0.0;     // Delta / kappa
    double photon_number = 0.0;
    [[nodiscard]] double coupling() const;  // |U0 alpha| / kappa
};

[[nodiscard]] ScaledParameters to_scaled(const ParticleSpecies& species, const CavityGeometry& cavity,
                                         const PumpConfig& pump);

/// Boundary conversions out of scaled units.
[[nodiscard]] Rate rate_from_scaled(double r, const CavityGeometry& cavity);
[[nodiscard]] Energy energy_from_scaled(double e, const CavityGeometry& cavity);
[[nodiscard]] Momentum momentum_from_scaled(double p, const CavityGeometry& cavity);
[[nodiscard]] Force force_from_scaled(double f, const CavityGeometry& cavity);

}  // namespace cavitycool
