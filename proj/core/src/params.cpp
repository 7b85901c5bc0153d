#include "cavitycool/params.hpp"

#include <cmath>
#include <stdexcept>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

using constants::pi;

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

void require_nonnegative(double v, const char* what) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be non-negative and finite");
    }
}

std::complex<double> clausius_mossotti(std::complex<double> eps) {
    const auto den = eps + 2.0;
    if (std::abs(den) < 1e-14) {
        throw SingularityError("dielectric function at the sphere resonance eps = -2");
    }
    return (eps - 1.0) / den;
}

Verdict classify(double ratio) {
    if (ratio >= validity_fail_threshold) return Verdict::fail;
    if (ratio >= validity_warn_threshold) return Verdict::warn;
    return Verdict::pass;
}

}  // namespace

void ParticleSpecies::validate() const {
    require_positive(mass.value(), "mass");
    require_nonnegative(chi.value(), "polarizability");
    require_nonnegative(sigma_abs.value(), "absorption cross section");
    require_nonnegative(sigma_sca.value(), "scattering cross section");
}

Wavenumber CavityGeometry::wavenumber() const { return 2.0 * pi / wavelength; }

Rate CavityGeometry::angular_frequency() const { return constants::c * wavenumber(); }

void CavityGeometry::validate() const {
    require_positive(mode_volume.value(), "mode volume");
    require_positive(wavelength.value(), "wavelength");
    require_positive(kappa.value(), "kappa");
}

PumpConfig PumpConfig::from_photon_number(double n, Rate Delta, std::string mode_id) {
    require_nonnegative(n, "photon number");
    return PumpConfig(n, Delta, std::move(mode_id));
}

PumpConfig PumpConfig::from_power(Power p, Rate Delta, std::string mode_id) {
    require_nonnegative(p.value(), "pump power");
    return PumpConfig(p, Delta, std::move(mode_id));
}

double PumpConfig::photon_number(const CavityGeometry& cavity) const {
    if (const auto* p = std::get_if<Power>(&source_)) {
        return pump_photon_number(*p, cavity.kappa, cavity.wavelength);
    }
    return std::get<double>(source_);
}

double PumpConfig::amplitude(const CavityGeometry& cavity) const { return std::sqrt(photon_number(cavity)); }

Rate recoil_frequency(Mass mass, Length wavelength) {
    require_positive(mass.value(), "mass");
    require_positive(wavelength.value(), "wavelength");
    const Wavenumber k = 2.0 * pi / wavelength;
    return constants::hbar * k * k / (2.0 * mass);
}

Rate coupling_constant(Polarizability chi, Length wavelength, Volume mode_volume) {
    require_positive(mode_volume.value(), "mode volume");
    require_positive(wavelength.value(), "wavelength");
    const Rate omega = constants::c * (2.0 * pi / wavelength);
    return -(omega * chi) / (2.0 * constants::eps0 * mode_volume);
}

Rate photon_rate(Area sigma, Volume mode_volume) {
    require_nonnegative(sigma.value(), "cross section");
    require_positive(mode_volume.value(), "mode volume");
    return constants::c * sigma / mode_volume;
}

ComplexPolarizability sphere_polarizability(Length radius, std::complex<double> epsilon) {
    require_positive(radius.value(), "radius");
    const Polarizability scale = 4.0 * pi * constants::eps0 * (radius * radius * radius);
    return ComplexPolarizability(scale.value() * clausius_mossotti(epsilon));
}

double size_parameter(Length radius, Length wavelength) {
    require_positive(wavelength.value(), "wavelength");
    return 2.0 * pi * (radius / wavelength);
}

Area absorption_cross_section(Length radius, std::complex<double> epsilon, Length wavelength) {
    require_positive(radius.value(), "radius");
    const double x = size_parameter(radius, wavelength);
    return 4.0 * pi * x * (radius * radius) * clausius_mossotti(epsilon).imag();
}

Area rayleigh_cross_section(Length radius, std::complex<double> epsilon, Length wavelength) {
    require_positive(radius.value(), "radius");
    const double x = size_parameter(radius, wavelength);
    return (8.0 * pi / 3.0) * std::pow(x, 4) * (radius * radius) * std::norm(clausius_mossotti(epsilon));
}

Area rayleigh_cross_section(Polarizability chi, Length wavelength) {
    require_nonnegative(chi.value(), "polarizability");
    require_positive(wavelength.value(), "wavelength");
    const Wavenumber k = 2.0 * pi / wavelength;
    const Volume a = chi / (4.0 * pi * constants::eps0);
    const auto k2 = k * k;
    return (8.0 * pi / 3.0) * ((k2 * k2) * (a * a));
}

double pump_photon_number(Power power, Rate kappa, Length wavelength) {
    require_nonnegative(power.value(), "pump power");
    require_positive(kappa.value(), "kappa");
    require_positive(wavelength.value(), "wavelength");
    const Rate omega = constants::c * (2.0 * pi / wavelength);
    return power / (2.0 * kappa * constants::hbar * omega);
}

DerivedRates derive_rates(const ParticleSpecies& species, const CavityGeometry& cavity) {
    species.validate();
    cavity.validate();
    return DerivedRates{
        recoil_frequency(species.mass, cavity.wavelength),
        coupling_constant(species.chi, cavity.wavelength, cavity.mode_volume),
        photon_rate(species.sigma_abs, cavity.mode_volume),
        photon_rate(species.sigma_sca, cavity.mode_volume),
    };
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::warn: return "warn";
        case Verdict::fail: return "fail";
    }
    return "?";
}

Verdict ValidityReport::overall() const {
    Verdict worst = Verdict::pass;
    for (const auto& c : checks) {
        if (static_cast<int>(c.verdict) > static_cast<int>(worst)) worst = c.verdict;
    }
    return worst;
}

const ValidityCheck& ValidityReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no validity check named " + name);
}

ValidityReport validity_report(const ParticleSpecies& species, const CavityGeometry& cavity,
                               const PumpConfig& pump, int particle_count, std::optional<Rate> kv) {
    const DerivedRates r = derive_rates(species, cavity);
    const double alpha = pump.amplitude(cavity);
    const double u0 = std::abs(r.U0 / cavity.kappa);
    const double u0a = u0 * alpha;

    ValidityReport report;
    auto add = [&](const char* name, double ratio) {
        report.checks.push_back({name, ratio, classify(ratio)});
    };
    add("single_photon", u0);
    add("pump_enhanced", u0a);
    add("n_particle", std::max(particle_count, 0) * u0a);
    if (kv) {
        const double kvv = std::abs(kv->value());
        const double shear = alpha == 0.0 ? 0.0
                           : kvv == 0.0   ? HUGE_VAL
                                          : 4.0 * (r.omega_r.value() * alpha / kvv) * u0a;
        add("shearing", shear);
    }
    return report;
}

double ScaledParameters::coupling() const { return std::abs(U0) * std::sqrt(photon_number); }

ScaledParameters to_scaled(const ParticleSpecies& species, const CavityGeometry& cavity, const PumpConfig& pump) {
    const DerivedRates r = derive_rates(species, cavity);
    ScaledParameters s;
    s.omega_r = r.omega_r / cavity.kappa;
    s.mass = 0.5 / s.omega_r;
    s.U0 = r.U0 / cavity.kappa;
    s.gamma_abs = r.gamma_abs / cavity.kappa;
    s.gamma_sca = r.gamma_sca / cavity.kappa;
    s.Delta = pump.detuning() / cavity.kappa;
    s.photon_number = pump.photon_number(cavity);
    return s;
}

Rate rate_from_scaled(double r, const CavityGeometry& cavity) { return cavity.kappa * r; }

Energy energy_from_scaled(double e, const CavityGeometry& cavity) {
    return (constants::hbar * cavity.kappa) * e;
}

Momentum momentum_from_scaled(double p, const CavityGeometry& cavity) {
    return (constants::hbar * cavity.wavenumber()) * p;
}

Force force_from_scaled(double f, const CavityGeometry& cavity) {
    return (constants::hbar * cavity.wavenumber() * cavity.kappa) * f;
}

}  // namespace cavitycool
