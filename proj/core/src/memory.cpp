#include "cavitycool/memory.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cavitycool/errors.hpp"
#include "cavitycool/quadrature.hpp"

namespace cavitycool {

namespace {

using cd = std::complex<double>;

struct Integrand {
    const MemoryQuery& q;
    cd nu;
    double v;

    quad::Vec<6> operator()(double tau) const {
        const Vec3 r{q.x - v * tau, q.y, q.z};
        const auto fm = evaluate(q.channel.geometry, r);
        const auto fn = evaluate(q.pump, r);
        const cd e = std::exp(-nu * tau);
        const cd h = e * std::conj(fm.value) * fn.value;
        const cd dh = e * (std::conj(fm.dx) * fn.value + std::conj(fm.value) * fn.dx);
        const cd dp = dh * (-tau / q.mass);
        return {h.real(), h.imag(), dh.real(), dh.imag(), dp.real(), dp.imag()};
    }
};

void check_query(const MemoryQuery& q, double tolerance) {
    if (!(q.channel.kappa > 0.0)) throw DomainError("memory integral needs kappa > 0");
    if (!(tolerance > 0.0)) throw DomainError("memory tolerance must be positive");
    if (!(q.mass > 0.0)) throw DomainError("mass must be positive");
    if (!std::isfinite(q.x) || !std::isfinite(q.p) || !std::isfinite(q.channel.Delta)) {
        throw DomainError("memory query must be finite");
    }
}

}  // namespace

double axial_wavenumber(const ModeGeometry& g) {
    if (const auto* r = std::get_if<GaussianRunning>(&g)) return r->axis == Axis::x ? r->k : 0.0;
    return wavenumber(g);
}

MemoryResult memory_integral(const MemoryQuery& q, double tolerance) {
    check_query(q, tolerance);
    const double kappa = q.channel.kappa;
    const double v = q.p / q.mass;
    const double k_eff = axial_wavenumber(q.channel.geometry) + axial_wavenumber(q.pump);
    const double tau_max = memory_truncation_factor / kappa;

    double width = 1.0 / kappa;
    if (k_eff * std::abs(v) > 0.0) width = std::min(width, std::numbers::pi / (2.0 * k_eff * std::abs(v)));
    width *= 0.25;

    quad::Options opt;
    opt.abs_tol = tolerance;
    const auto r = quad::integrate<6>(Integrand{q, q.channel.nu(), v}, 0.0, tau_max, width, opt);

    MemoryResult out;
    out.G = {r.value[0], r.value[1]};
    out.dG_dx = {r.value[2], r.value[3]};
    out.dG_dp = {r.value[4], r.value[5]};
    const double tail = std::exp(-kappa * tau_max) / kappa * (1.0 + k_eff * (1.0 + tau_max / q.mass));
    out.quadrature_error = r.error + tail;
    out.truncation_tau = tau_max;
    out.warning = !r.converged || out.quadrature_error > tolerance;
    return out;
}

MemoryResult memory_integral_fp_closed(double x, double p, double mass, double kappa, double Delta, Parity parity,
                                       double k) {
    if (!(kappa > 0.0)) throw DomainError("memory integral needs kappa > 0");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    const double s = parity == Parity::cos ? 1.0 : -1.0;
    const cd nu(kappa, Delta);
    const cd I(0.0, 1.0);
    const double kv = k * p / mass;
    const cd ep = std::exp(2.0 * I * k * x), em = std::conj(ep);
    const cd ap = 1.0 / (nu + 2.0 * I * kv), am = 1.0 / (nu - 2.0 * I * kv);

    MemoryResult out;
    out.G = 0.5 / nu + 0.25 * s * (ep * ap + em * am);
    out.dG_dx = 0.5 * s * I * k * (ep * ap - em * am);
    out.dG_dp = 0.5 * s * I * (k / mass) * (em * am * am - ep * ap * ap);
    out.truncation_tau = std::numeric_limits<double>::infinity();
    return out;
}

std::vector<MemoryResult> per_particle_memory(const ModeChannel& m, const ModeGeometry& n,
                                              std::span<const PhasePoint> particles, double mass, double tolerance) {
    std::vector<MemoryResult> out;
    out.reserve(particles.size());
    for (const auto& pt : particles) {
        out.push_back(memory_integral(MemoryQuery{m, n, pt.x, pt.p, mass, pt.y, pt.z}, tolerance));
    }
    return out;
}

std::vector<std::pair<double, std::complex<double>>> sample_integrand(const MemoryQuery& q, std::size_t count) {
    check_query(q, 1.0);
    const double tau_max = memory_truncation_factor / q.channel.kappa;
    const Integrand f{q, q.channel.nu(), q.p / q.mass};
    std::vector<std::pair<double, cd>> out;
    for (std::size_t i = 0; i < count; ++i) {
        const double tau = count > 1 ? tau_max * static_cast<double>(i) / static_cast<double>(count - 1) : 0.0;
        const auto v = f(tau);
        out.emplace_back(tau, cd(v[0], v[1]));
    }
    return out;
}

}  // namespace cavitycool
