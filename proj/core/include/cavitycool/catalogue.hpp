#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cavitycool/params.hpp"

namespace cavitycool {

/// Species catalogue: one species per line as whitespace-separated key=value
/// pairs (label, mass_amu, chi_A3, sigma_abs_A2, sigma_sca_A2). '#' starts a
/// comment. Missing sigma_abs means transparent; missing sigma_sca is derived
/// from chi via the point-dipole Rayleigh formula at `wavelength`.
[[nodiscard]] std::vector<ParticleSpecies> parse_catalogue(std::istream& in, Length wavelength);
[[nodiscard]] std::vector<ParticleSpecies> load_catalogue(const std::string& path, Length wavelength);
[[nodiscard]] const ParticleSpecies* find_species(const std::vector<ParticleSpecies>& cat, const std::string& label);

/// A reference cell; `approximate` marks values printed with a tilde.
struct ReferenceCell {
    std::optional<double> value;
    bool approximate = false;
};

/// Derived columns in MHz: omega_r, |U0|, 2 gamma_a, 2 gamma_s.
struct ReferenceRow {
    std::string label;
    ReferenceCell omega_r, U0, two_gamma_abs, two_gamma_sca;
};

/// Reference table: label followed by four cells; '-' for an empty cell and
/// a leading '~' for an approximate one.
[[nodiscard]] std::vector<ReferenceRow> parse_reference_table(std::istream& in);
[[nodiscard]] std::vector<ReferenceRow> load_reference_table(const std::string& path);

}  // namespace cavitycool
