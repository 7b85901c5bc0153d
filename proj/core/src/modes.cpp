#include "cavitycool/modes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <nlohmann/json.hpp>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

using cd = std::complex<double>;
constexpr double pi = std::numbers::pi;

struct Longitudinal {
    double v, d1, d2;
};

Longitudinal standing(double k, Parity p, double x) {
    const double c = std::cos(k * x), s = std::sin(k * x);
    if (p == Parity::cos) return {c, -k * s, -k * k * c};
    return {s, k * c, -k * k * s};
}

double axis_coord(const Vec3& r, Axis a) {
    switch (a) {
        case Axis::x: return r.x;
        case Axis::y: return r.y;
        case Axis::z: return r.z;
    }
    return 0.0;
}

ModeSample eval(const PlaneStanding& g, const Vec3& r) {
    const auto L = standing(g.k, g.parity, r.x);
    return {L.v, L.d1, L.d2, -g.k * g.k * L.v};
}

ModeSample eval(const GaussianRunning& g, const Vec3& r) {
    const double s = axis_coord(r, g.axis);
    const double rho2 = r.x * r.x + r.y * r.y + r.z * r.z - s * s;
    const bool ideal = std::isinf(g.waist);
    const double iw2 = ideal ? 0.0 : 1.0 / (g.waist * g.waist);
    const cd f = std::exp(-rho2 * iw2) * std::exp(cd(0.0, g.direction * g.k * s));
    const cd lap = (4.0 * rho2 * iw2 * iw2 - 4.0 * iw2 - g.k * g.k) * f;
    if (g.axis == Axis::x) {
        const cd ik(0.0, g.direction * g.k);
        return {f, ik * f, -g.k * g.k * f, lap};
    }
    return {f, -2.0 * r.x * iw2 * f, (4.0 * r.x * r.x * iw2 * iw2 - 2.0 * iw2) * f, lap};
}

ModeSample eval(const LaguerreGaussianStanding& g, const Vec3& r) {
    const cd u = lg_transverse(g.m, g.l, g.waist, r.y, r.z);
    const auto L = standing(g.k, g.parity, r.x);
    const double w2 = g.waist * g.waist;
    const double rho2 = r.y * r.y + r.z * r.z;
    const double transverse = 4.0 * rho2 / (w2 * w2) - 4.0 * (2 * g.m + g.l + 1) / w2;
    return {u * L.v, u * L.d1, u * L.d2, (transverse - g.k * g.k) * u * L.v};
}

double radical_inverse(std::size_t i, unsigned base) {
    double inv = 1.0 / base, f = inv, r = 0.0;
    while (i > 0) {
        r += f * static_cast<double>(i % base);
        i /= base;
        f *= inv;
    }
    return r;
}

}  // namespace

std::complex<double> lg_transverse(int m, int l, double w, double y, double z) {
    const double rho2 = (y * y + z * z) / (w * w);
    const double norm = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(m + l + 1.0)));
    const cd helix = std::pow(cd(y, z) * (std::numbers::sqrt2 / w), l);
    return norm * helix * std::assoc_laguerre(static_cast<unsigned>(m), static_cast<unsigned>(l), 2.0 * rho2) *
           std::exp(-rho2);
}

ModeSample evaluate(const ModeGeometry& g, const Vec3& r) {
    return std::visit([&](const auto& m) { return eval(m, r); }, g);
}

std::complex<double> value(const ModeGeometry& g, const Vec3& r) { return evaluate(g, r).value; }
std::complex<double> gradient_x(const ModeGeometry& g, const Vec3& r) { return evaluate(g, r).dx; }
std::complex<double> second_derivative_x(const ModeGeometry& g, const Vec3& r) { return evaluate(g, r).dxx; }

double wavenumber(const ModeGeometry& g) {
    return std::visit([](const auto& m) { return m.k; }, g);
}

ModeGeometry rescaled(const ModeGeometry& g, double unit) {
    return std::visit(
        [&](auto m) -> ModeGeometry {
            m.k *= unit;
            if constexpr (!std::is_same_v<decltype(m), PlaneStanding>) m.waist /= unit;
            return m;
        },
        g);
}

void validate(const ModeGeometry& g) {
    std::visit(
        [](const auto& m) {
            if (!std::isfinite(m.k) || m.k < 0.0) throw DomainError("mode wavenumber must be finite and >= 0");
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, GaussianRunning>) {
                if (!(m.waist > 0.0)) throw DomainError("running-wave waist must be positive");
                if (m.direction != 1 && m.direction != -1) throw DomainError("direction must be +1 or -1");
            } else if constexpr (std::is_same_v<T, LaguerreGaussianStanding>) {
                if (m.n < 1 || m.m < 0 || m.l < 0) throw DomainError("LG indices need n >= 1, m >= 0, l >= 0");
                if (!(m.waist > 0.0) || !std::isfinite(m.waist)) throw DomainError("LG waist must be positive");
            }
        },
        g);
}

double helmholtz_residual(const ModeGeometry& g, std::span<const Vec3> points) {
    const double k2 = wavenumber(g) * wavenumber(g);
    double worst = 0.0;
    for (const auto& r : points) {
        const auto s = evaluate(g, r);
        worst = std::max(worst, std::abs(s.laplacian + k2 * s.value));
    }
    return worst;
}

std::vector<Vec3> halton_points(std::size_t count, const Vec3& lo, const Vec3& hi) {
    std::vector<Vec3> pts;
    pts.reserve(count);
    for (std::size_t i = 1; i <= count; ++i) {
        pts.push_back({lo.x + (hi.x - lo.x) * radical_inverse(i, 2),
                       lo.y + (hi.y - lo.y) * radical_inverse(i, 3),
                       lo.z + (hi.z - lo.z) * radical_inverse(i, 5)});
    }
    return pts;
}

void ModeChannel::validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("channel kappa must be positive");
    if (!std::isfinite(Delta) || !std::isfinite(U)) throw DomainError("channel parameters must be finite");
    cavitycool::validate(geometry);
}

double ConfocalSetup::wavelength() const { return 2.0 * mirror_distance / (static_cast<double>(n0) + 0.5); }

double ConfocalSetup::wavenumber() const { return confocal_wavenumber(*this, n0, 0, 0); }

double ConfocalSetup::waist() const {
    if (fundamental_waist) return *fundamental_waist;
    return std::sqrt(wavelength() * mirror_distance / (2.0 * pi));
}

double confocal_wavenumber(const ConfocalSetup& s, long n, int m, int l) {
    return pi / s.mirror_distance * (static_cast<double>(n) + 0.5 * (2 * m + l + 1));
}

double effective_waist(int m, int l, double w0) {
    if (m < 0 || l < 0) throw DomainError("transverse indices must be non-negative");
    return w0 * std::sqrt(2.0 * m + l + 1.0);
}

std::vector<LaguerreGaussianStanding> confocal_degenerate_set(const ConfocalSetup& s, int max_order) {
    std::vector<LaguerreGaussianStanding> out;
    if (max_order < 0) return out;
    if (s.n0 < 2L * max_order || s.n0 < 1) {
        throw DomainError("fundamental index too small for the requested transverse order");
    }
    const double k = s.wavenumber();
    const double w0 = s.waist();
    for (int order = 0; order <= max_order; order += 2) {
        for (int l = 0; l <= order; l += 2) {
            const int m = (order - l) / 2;
            const long n = s.n0 - order / 2;
            out.push_back({k, static_cast<int>(n), m, l, n % 2 == 0 ? Parity::cos : Parity::sin, w0});
        }
    }
    return out;
}

std::vector<LaguerreGaussianStanding> confocal_degenerate_set(const ConfocalSetup& s) {
    const double a = s.waist_ratio_limit;
    if (!(a >= 1.0)) return {};
    const int max_order = static_cast<int>(std::floor(a * a - 1.0 + 1e-9));
    return confocal_degenerate_set(s, max_order);
}

double degeneracy_estimate(double a) { return std::pow(a, 4) / 2.0; }

std::string modes_to_json(const std::vector<LaguerreGaussianStanding>& modes, double w0) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& m : modes) {
        arr.push_back({{"n", m.n},
                       {"m", m.m},
                       {"l", m.l},
                       {"parity", m.parity == Parity::cos ? "cos" : "sin"},
                       {"k", m.k},
                       {"effective_waist", effective_waist(m.m, m.l, w0)}});
    }
    return arr.dump(2);
}

}  // namespace cavitycool
