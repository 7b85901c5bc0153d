#pragma once

#include <numbers>

#include "cavitycool/units.hpp"

namespace cavitycool::constants {

// CODATA 2018 recommended values (c exact, hbar exact via h).
inline constexpr Action hbar{1.054571817e-34};
inline constexpr Velocity c{299792458.0};
inline constexpr Permittivity eps0{8.8541878128e-12};
inline constexpr Mass amu{1.66053906660e-27};

inline constexpr double pi = std::numbers::pi;

}  // namespace cavitycool::constants

namespace cavitycool::si {

// Construction helpers for the units the literature quotes.
inline constexpr Mass amu(double n) { return constants::amu * n; }
inline constexpr Length metres(double v) { return Length{v}; }
inline constexpr Length micrometres(double v) { return Length{v * 1e-6}; }
inline constexpr Length millimetres(double v) { return Length{v * 1e-3}; }
inline constexpr Area square_angstrom(double v) { return Area{v * 1e-20}; }
inline constexpr Volume cubic_millimetres(double v) { return Volume{v * 1e-9}; }
inline constexpr Rate per_second(double v) { return Rate{v}; }
/// 1 MHz here is 1e6 rad/s, the convention of the coupling-parameter table.
inline constexpr Rate megahertz(double v) { return Rate{v * 1e6}; }
inline constexpr Power watts(double v) { return Power{v}; }

/// Polarizability quoted as a volume in cubic angstrom times 4*pi*eps0.
inline constexpr Polarizability angstrom3_4pi_eps0(double v) {
    return Polarizability{v * 1e-30 * 4.0 * constants::pi * constants::eps0.value()};
}
inline constexpr double to_angstrom3(Polarizability chi) {
    return chi.value() / (4.0 * constants::pi * constants::eps0.value()) * 1e30;
}
inline constexpr double to_megahertz(Rate r) { return r.value() * 1e-6; }
inline constexpr double to_square_angstrom(Area a) { return a.value() * 1e20; }

}  // namespace cavitycool::si
