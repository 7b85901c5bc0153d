#pragma once

#include <complex>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cavitycool {

enum class Parity { cos, sin };
enum class Axis { x, y, z };

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;
};

// Mode functions in a lab frame with x along the cavity axis. Lengths and
// wavenumbers are in any consistent unit (SI, or 1/k in scaled work).

/// cos(kx) or sin(kx).
struct PlaneStanding {
    double k = 1.0;
    Parity parity = Parity::cos;
};

/// exp(i*dir*k*r_axis) exp(-r_perp^2/w^2); an infinite waist is a plane wave.
struct GaussianRunning {
    double k = 1.0;
    Axis axis = Axis::y;
    double waist = std::numeric_limits<double>::infinity();
    int direction = +1;
};

/// Near-centre Laguerre-Gauss standing wave u_{m,l}(y,z) {cos,sin}(kx).
/// Helical transverse profile, normalised to equal power with unit peak for
/// the fundamental; Gouy phase and wavefront curvature are neglected.
struct LaguerreGaussianStanding {
    double k = 1.0;
    int n = 1;
    int m = 0;
    int l = 0;
    Parity parity = Parity::cos;
    double waist = 1.0;
};

using ModeGeometry = std::variant<PlaneStanding, GaussianRunning, LaguerreGaussianStanding>;

struct ModeSample {
    std::complex<double> value;
    std::complex<double> dx;
    std::complex<double> dxx;
    std::complex<double> laplacian;
};

/// Value, d/dx, d^2/dx^2 and full Laplacian, all analytic.
[[nodiscard]] ModeSample evaluate(const ModeGeometry& g, const Vec3& r);
[[nodiscard]] std::complex<double> value(const ModeGeometry& g, const Vec3& r);
[[nodiscard]] std::complex<double> gradient_x(const ModeGeometry& g, const Vec3& r);
[[nodiscard]] std::complex<double> second_derivative_x(const ModeGeometry& g, const Vec3& r);

[[nodiscard]] double wavenumber(const ModeGeometry& g);
/// Copy with lengths divided by `unit` (wavenumbers multiplied).
[[nodiscard]] ModeGeometry rescaled(const ModeGeometry& g, double unit);
/// Throws DomainError if indices or parameters are out of range.
void validate(const ModeGeometry& g);

/// max |Laplacian f + k^2 f| over the points.
[[nodiscard]] double helmholtz_residual(const ModeGeometry& g, std::span<const Vec3> points);
/// Halton points (bases 2, 3, 5) in the box [lo, hi].
[[nodiscard]] std::vector<Vec3> halton_points(std::size_t count, const Vec3& lo, const Vec3& hi);

/// Transverse LG profile u_{m,l}(y,z) for waist w.
[[nodiscard]] std::complex<double> lg_transverse(int m, int l, double w, double y, double z);

struct ModeChannel {
    ModeGeometry geometry;
    double kappa = 1.0;
    double Delta = 0.0;
    double U = 0.0;

    [[nodiscard]] std::complex<double> nu() const { return {kappa, Delta}; }
    void validate() const;
};

struct ConfocalSetup {
    double mirror_distance = 10e-3;
    long n0 = 20000;
    double waist_ratio_limit = 1.0;
    std::optional<double> fundamental_waist;

    /// 2d/(n0 + 1/2)
    [[nodiscard]] double wavelength() const;
    /// k_{n0,0,0} = (pi/d)(n0 + 1/2)
    [[nodiscard]] double wavenumber() const;
    /// sqrt(lambda d / 2 pi) unless overridden.
    [[nodiscard]] double waist() const;
};

[[nodiscard]] double confocal_wavenumber(const ConfocalSetup& s, long n, int m, int l);
[[nodiscard]] double effective_waist(int m, int l, double w0);

/// Modes exactly degenerate with (n0,0,0) whose effective waist stays within
/// waist_ratio_limit * w0. Fixed k forces l even and n = n0 - (2m+l)/2.
[[nodiscard]] std::vector<LaguerreGaussianStanding> confocal_degenerate_set(const ConfocalSetup& s);
/// Same enumeration capped directly by transverse order 2m+l <= max_order.
[[nodiscard]] std::vector<LaguerreGaussianStanding> confocal_degenerate_set(const ConfocalSetup& s, int max_order);
/// Loose estimate a^4/2 of the degeneracy for waist ratio a.
[[nodiscard]] double degeneracy_estimate(double waist_ratio_limit);

/// JSON list of {n, m, l, parity, k, effective_waist}.
[[nodiscard]] std::string modes_to_json(const std::vector<LaguerreGaussianStanding>& modes, double w0);

}  // namespace cavitycool
