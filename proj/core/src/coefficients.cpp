#include "cavitycool/coefficients.hpp"

#include <cmath>
#include <numbers>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

using cd = std::complex<double>;
constexpr cd I{0.0, 1.0};

Vec3 at(const PhasePoint& pt) { return {pt.x, pt.y, pt.z}; }

// Terms shared by the multimode and N-particle sums; keeping a single
// expression per term makes the two routes agree bit for bit.
double term_force1(cd w, cd d1, cd G) { return 2.0 * std::real(I * w * d1 * G); }
double term_force2(cd w, cd d2, cd dGdp) { return -std::real(w * d2 * dGdp); }
double term_dpp(cd w, cd d1, cd dGdx) { return 2.0 * std::real(w * d1 * dGdx); }
double term_dxp(cd w, cd d1, cd dGdp) { return -std::real(w * d1 * dGdp); }

cd pair_weight(double Ulm, double Umn, cd al, cd an) { return cd(Ulm * Umn) * (std::conj(al) * an); }

struct CrossDerivs {
    cd d1, d2;
};

// d/dx and d^2/dx^2 of f_l^* f_m.
CrossDerivs cross(const ModeSample& fl, const ModeSample& fm, bool drop_l_gradient) {
    if (drop_l_gradient) return {std::conj(fl.value) * fm.dx, std::conj(fl.value) * fm.dxx};
    return {std::conj(fl.dx) * fm.value + std::conj(fl.value) * fm.dx,
            std::conj(fl.dxx) * fm.value + 2.0 * std::conj(fl.dx) * fm.dx + std::conj(fl.value) * fm.dxx};
}

bool same_standing_profile(const ModeGeometry& a, const ModeGeometry& b) {
    const auto* pa = std::get_if<PlaneStanding>(&a);
    const auto* pb = std::get_if<PlaneStanding>(&b);
    if (pa && pb) return pa->k == pb->k && pa->parity == pb->parity;
    const auto* la = std::get_if<LaguerreGaussianStanding>(&a);
    const auto* lb = std::get_if<LaguerreGaussianStanding>(&b);
    if (la && lb) {
        return la->k == lb->k && la->parity == lb->parity && la->m == lb->m && la->l == lb->l &&
               la->waist == lb->waist;
    }
    return false;
}

}  // namespace

MemoryResult channel_memory(const ModeChannel& m, const ModeGeometry& n, const PhasePoint& pt, double mass,
                            const MemoryOptions& opt) {
    const bool closed = same_standing_profile(m.geometry, n);
    if (opt.method == MemoryMethod::closed_form && !closed) {
        throw DomainError("no closed-form memory integral for this mode pair");
    }
    if (closed && opt.method != MemoryMethod::quadrature) {
        if (const auto* ps = std::get_if<PlaneStanding>(&n)) {
            return memory_integral_fp_closed(pt.x, pt.p, mass, m.kappa, m.Delta, ps->parity, ps->k);
        }
        const auto& lg = std::get<LaguerreGaussianStanding>(n);
        auto r = memory_integral_fp_closed(pt.x, pt.p, mass, m.kappa, m.Delta, lg.parity, lg.k);
        const double u2 = std::norm(lg_transverse(lg.m, lg.l, lg.waist, pt.y, pt.z));
        r.G *= u2;
        r.dG_dx *= u2;
        r.dG_dp *= u2;
        return r;
    }
    return memory_integral(MemoryQuery{m, n, pt.x, pt.p, mass, pt.y, pt.z}, opt.tolerance);
}

double conservative_force(const ModeChannel& pump, std::complex<double> alpha, const PhasePoint& pt) {
    const auto f = evaluate(pump.geometry, at(pt));
    const double grad_intensity = 2.0 * std::real(std::conj(f.value) * f.dx);
    return -pump.U * std::norm(alpha) * grad_intensity;
}

DissipativeTerms dissipative_multimode(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                       std::complex<double> alpha, std::span<const ModeChannel> empty,
                                       const MultimodeOptions& opt) {
    pump.validate();
    const Vec3 r = at(pt);
    const auto f0 = evaluate(pump.geometry, r);
    DissipativeTerms t;
    auto add = [&](const ModeChannel& ch) {
        const cd w = pair_weight(ch.U, ch.U, alpha, alpha);
        if (w == cd(0.0)) return;
        const auto fm = evaluate(ch.geometry, r);
        const auto d = cross(f0, fm, opt.neglect_pump_gradient);
        const auto G = channel_memory(ch, pump.geometry, pt, mass, opt.memory);
        t.force1 += term_force1(w, d.d1, G.G);
        t.force2 += term_force2(w, d.d2, G.dG_dp);
        t.D_pp += term_dpp(w, d.d1, G.dG_dx);
        t.D_xp += term_dxp(w, d.d1, G.dG_dp);
        t.warning = t.warning || G.warning;
    };
    add(pump);
    for (const auto& ch : empty) {
        ch.validate();
        add(ch);
    }
    return t;
}

DissipativeTerms dissipative_single(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                    std::complex<double> alpha, const MemoryOptions& opt) {
    return dissipative_multimode(pt, mass, pump, alpha, {}, MultimodeOptions{opt, false});
}

FrictionCoefficient friction_coefficient(const PhasePoint& pt, double mass, const ModeChannel& pump,
                                         std::complex<double> alpha, std::span<const ModeChannel> empty,
                                         bool neglect_pump_gradient) {
    const Vec3 r = at(pt);
    const auto f0 = evaluate(pump.geometry, r);
    FrictionCoefficient beta;
    auto add = [&](const ModeChannel& ch) {
        const double w = ch.U * ch.U * std::norm(alpha);
        const double k2 = ch.kappa * ch.kappa, D2 = ch.Delta * ch.Delta;
        const double pref = -4.0 * ch.kappa * w / (mass * (k2 + D2) * (k2 + D2));
        const auto d = cross(f0, evaluate(ch.geometry, r), neglect_pump_gradient);
        beta.first_order += pref * ch.Delta * std::norm(d.d1);
        beta.second_order += pref / (2.0 * mass) * (k2 - D2) / (k2 + D2) * std::norm(d.d2);
    };
    add(pump);
    for (const auto& ch : empty) add(ch);
    return beta;
}

Rate averaged_friction_scaling(const ParticleSpecies& species, const CavityGeometry& cavity, const PumpConfig& pump) {
    const auto s = to_scaled(species, cavity, pump);
    return rate_from_scaled(averaged_friction_scaling(s.coupling(), s.omega_r), cavity);
}

Rate averaged_friction_period_mean(const ParticleSpecies& species, const CavityGeometry& cavity,
                                   const PumpConfig& pump) {
    return averaged_friction_scaling(species, cavity, pump) * 0.5;
}

MomentumDiffusion averaged_diffusion_scaling(const ParticleSpecies& species, const CavityGeometry& cavity,
                                             const PumpConfig& pump) {
    const auto s = to_scaled(species, cavity, pump);
    const Momentum hk = momentum_from_scaled(1.0, cavity);
    return (hk * hk) * cavity.kappa * averaged_diffusion_scaling(s.coupling(), s.omega_r);
}

double averaged_friction_scaling(double coupling, double omega_r) {
    return -1.5 * std::sqrt(3.0) * coupling * coupling * omega_r;
}

double averaged_diffusion_scaling(double coupling, double omega_r) {
    // (3 m / 2) c^2 omega_r with m = 1 / (2 omega_r)
    const double mass = 0.5 / omega_r;
    return 1.5 * mass * coupling * coupling * omega_r;
}

double cooling_limit(double kappa, double Delta) {
    if (!(kappa > 0.0)) throw DomainError("kappa must be positive");
    if (!(Delta > 0.0)) throw DomainError("cooling limit needs a red-detuned pump, Delta > 0");
    return 0.25 * (Delta / kappa + kappa / Delta);
}

AveragedFP fp_averaged(double kv, double kappa, double Delta, double coupling) {
    const cd nu(kappa, Delta);
    const double q = 4.0 * kv * kv;
    const double den = std::norm(nu * nu + q);
    const double c2 = coupling * coupling;
    return {-2.0 * kappa * c2 * Delta * kv / den, kappa * c2 * (std::norm(nu) + q) / den};
}

double fp_local_diffusion(double kx, double kv, double kappa, double Delta, double coupling) {
    const cd nu(kappa, Delta);
    const double q = 4.0 * kv * kv;
    const double den = std::norm(nu * nu + q);
    const double s = std::sin(2.0 * kx), c = std::cos(2.0 * kx);
    return 2.0 * coupling * coupling / den *
           (kappa * (std::norm(nu) + q) * s * s - 2.0 * kv * (std::real(nu * nu) + q) * s * c);
}

void NParticleSystem::validate() const {
    const auto M = modes.size();
    if (M == 0) throw DomainError("N-particle system needs at least one mode");
    if (U.size() != M * M || alpha.size() != M) throw DomainError("coupling matrix or amplitudes have wrong size");
    if (!(mass > 0.0)) throw DomainError("mass must be positive");
    for (std::size_t l = 0; l < M; ++l) {
        modes[l].validate();
        for (std::size_t m = 0; m < l; ++m) {
            if (coupling(l, m) != coupling(m, l)) throw DomainError("coupling matrix must be symmetric");
        }
    }
}

NParticleSystem as_n_particle_system(const ModeChannel& pump, std::complex<double> alpha,
                                     std::span<const ModeChannel> empty, double mass) {
    NParticleSystem sys;
    sys.mass = mass;
    sys.modes.push_back(pump);
    sys.modes.insert(sys.modes.end(), empty.begin(), empty.end());
    const auto M = sys.modes.size();
    sys.alpha.assign(M, cd(0.0));
    sys.alpha[0] = alpha;
    sys.U.assign(M * M, 0.0);
    const double U0 = pump.U;
    for (std::size_t l = 0; l < M; ++l) {
        for (std::size_t m = 0; m < M; ++m) {
            double u = 0.0;
            if (l == 0) u = sys.modes[m].U;
            else if (m == 0) u = sys.modes[l].U;
            else if (U0 != 0.0) u = sys.modes[l].U * sys.modes[m].U / U0;  // U_lm^2 = U_ll U_mm
            sys.U[l * M + m] = u;
        }
    }
    return sys;
}

NParticleCoefficients n_particle_coefficients(std::span<const PhasePoint> particles, const NParticleSystem& sys,
                                              const MemoryOptions& opt) {
    sys.validate();
    const std::size_t N = particles.size(), M = sys.mode_count();
    if (N == 0) throw DomainError("need at least one particle");

    NParticleCoefficients out;
    out.particles = N;
    out.g_x.resize(N);
    out.force1.assign(N, 0.0);
    out.force2.assign(N, 0.0);
    out.diffusion.assign(4 * N * N, 0.0);
    const std::size_t dim = 2 * N;
    auto Dref = [&](std::size_t i, std::size_t j) -> double& { return out.diffusion[i * dim + j]; };

    std::vector<std::vector<ModeSample>> f(N, std::vector<ModeSample>(M));
    for (std::size_t k = 0; k < N; ++k) {
        out.g_x[k] = particles[k].p / sys.mass;
        for (std::size_t m = 0; m < M; ++m) f[k][m] = evaluate(sys.modes[m].geometry, at(particles[k]));
    }

    // G_mn at every particle, computed on first use.
    std::vector<std::vector<MemoryResult>> memo(M * M);
    auto G = [&](std::size_t m, std::size_t n) -> const std::vector<MemoryResult>& {
        auto& v = memo[m * M + n];
        if (v.empty()) {
            for (const auto& pt : particles) {
                v.push_back(channel_memory(sys.modes[m], sys.modes[n].geometry, pt, sys.mass, opt));
                out.memory_warning = out.memory_warning || v.back().warning;
            }
        }
        return v;
    };

    std::vector<double> dpp(N * N, 0.0);
    for (std::size_t l = 0; l < M; ++l) {
        for (std::size_t m = 0; m < M; ++m) {
            for (std::size_t n = 0; n < M; ++n) {
                const cd w = pair_weight(sys.coupling(l, m), sys.coupling(m, n), sys.alpha[l], sys.alpha[n]);
                if (w == cd(0.0)) continue;
                const auto& g = G(m, n);
                cd gsum = g[0].G;
                for (std::size_t j = 1; j < N; ++j) gsum += g[j].G;
                for (std::size_t k = 0; k < N; ++k) {
                    const auto d = cross(f[k][l], f[k][m], false);
                    out.force1[k] += term_force1(w, d.d1, gsum);
                    out.force2[k] += term_force2(w, d.d2, g[k].dG_dp);
                    for (std::size_t j = 0; j < N; ++j) {
                        dpp[k * N + j] += term_dpp(w, d.d1, g[j].dG_dx);
                        Dref(2 * k + 1, 2 * j) += term_dxp(w, d.d1, g[j].dG_dp);
                    }
                }
            }
        }
    }
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < N; ++j) {
            Dref(2 * k + 1, 2 * j + 1) = 0.5 * (dpp[k * N + j] + dpp[j * N + k]);
        }
    }
    // mirror the p-x entries into the x-p positions
    for (std::size_t k = 0; k < N; ++k) {
        for (std::size_t j = 0; j < N; ++j) Dref(2 * j, 2 * k + 1) = Dref(2 * k + 1, 2 * j);
    }
    return out;
}

void ScatteringPattern::validate() const {
    if (!(mean_ux >= -1.0 && mean_ux <= 1.0) || !(mean_ux2 <= 1.0) || !(mean_ux * mean_ux <= mean_ux2)) {
        throw DomainError("scattering pattern needs <u>^2 <= <u^2> <= 1");
    }
}

ExtraTerms absorption_terms(const PhasePoint& pt, const ModeGeometry& pump, std::complex<double> alpha,
                            double gamma_abs, double gamma_sca) {
    const auto f = evaluate(pump, at(pt));
    const double g = (gamma_abs + gamma_sca) * std::norm(alpha);
    return {2.0 * g * std::imag(std::conj(f.value) * f.dx), g * std::norm(f.dx)};
}

ExtraTerms scattering_terms(const PhasePoint& pt, const ModeGeometry& pump, std::complex<double> alpha,
                            double gamma_sca, const ScatteringPattern& pattern, double k_p) {
    pattern.validate();
    const auto f = evaluate(pump, at(pt));
    const double g = gamma_sca * std::norm(alpha);
    const double flux = std::imag(std::conj(f.value) * f.dx);
    return {2.0 * g * k_p * pattern.mean_ux * std::norm(f.value),
            g * k_p * (k_p * pattern.mean_ux2 * std::norm(f.value) + 2.0 * pattern.mean_ux * flux)};
}

DiffusionBudget diffusion_budget(const ScaledParameters& s, const BudgetOptions& opt) {
    opt.pattern.validate();
    // Position averages of |df/dx|^2, |f|^2 and the flux Im[f^* df/dx].
    double grad2 = 0.0, int2 = 0.0, flux = 0.0;
    if (opt.orientation == PumpOrientation::axial) {
        grad2 = 0.5;
        int2 = 0.5;
    } else {
        // standing wave along y with a Gaussian envelope across x; averaged
        // over a y period (factor 1/2) and one x period about the axis
        const int n = 4001;
        const double w2 = opt.pump_waist * opt.pump_waist;
        for (int i = 0; i < n; ++i) {
            const double x = -std::numbers::pi + 2.0 * std::numbers::pi * i / (n - 1);
            const double e2 = std::exp(-2.0 * x * x / w2);
            const double wt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
            grad2 += wt * 4.0 * x * x / (w2 * w2) * e2;
            int2 += wt * e2;
        }
        grad2 *= 0.5 / (n - 1);
        int2 *= 0.5 / (n - 1);
    }
    const double n = s.photon_number;
    DiffusionBudget b;
    b.cavity = fp_averaged(0.0, 1.0, s.Delta, s.coupling()).D_pp;
    b.absorption = s.gamma_abs * n * grad2;
    b.scattering_uptake = s.gamma_sca * n * grad2;
    b.scattering = s.gamma_sca * n * (opt.pattern.mean_ux2 * int2 + 2.0 * opt.pattern.mean_ux * flux);
    if (b.cavity > 0.0) {
        b.absorption_ratio = b.absorption / b.cavity;
        b.scattering_uptake_ratio = b.scattering_uptake / b.cavity;
        b.scattering_ratio = b.scattering / b.cavity;
        b.inflation = 1.0 + b.absorption_ratio + b.scattering_uptake_ratio + b.scattering_ratio;
    }
    return b;
}

DiffusionBudget diffusion_budget(const ParticleSpecies& species, const CavityGeometry& cavity,
                                 const PumpConfig& pump, const BudgetOptions& opt) {
    return diffusion_budget(to_scaled(species, cavity, pump), opt);
}

}  // namespace cavitycool
