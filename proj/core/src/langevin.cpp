#include "cavitycool/langevin.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <sstream>
#include <thread>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

using cd = std::complex<double>;
constexpr double two_pi = 2.0 * std::numbers::pi;
constexpr std::size_t block_size = 64;

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

bool closed_form_pump(const SimulationConfig& cfg) {
    return cfg.empty.empty() && std::holds_alternative<PlaneStanding>(cfg.pump.geometry) &&
           cfg.memory.method != MemoryMethod::quadrature;
}

// Single standing-wave pump: the memory integral is known in closed form,
// so the coefficients are assembled without the generic mode machinery.
DissipativeTerms standing_wave_terms(double x, double p, const SimulationConfig& cfg) {
    const auto& ps = std::get<PlaneStanding>(cfg.pump.geometry);
    const double s = ps.parity == Parity::cos ? 1.0 : -1.0;
    const double k = ps.k;
    const double s2 = std::sin(2.0 * k * x), c2 = std::cos(2.0 * k * x);
    const double d1 = -s * k * s2;            // d|f|^2/dx
    const double d2 = -2.0 * s * k * k * c2;  // d^2|f|^2/dx^2
    // same closed form as memory_integral_fp_closed, sharing the phase factor
    const double kv = k * p / cfg.mass;
    const cd nu(cfg.pump.kappa, cfg.pump.Delta);
    const cd qp = nu + cd(0.0, 2.0 * kv), qm = nu - cd(0.0, 2.0 * kv);
    const cd ap = std::conj(qp) * (1.0 / std::norm(qp)), am = std::conj(qm) * (1.0 / std::norm(qm));
    const cd ep(c2, s2), em(c2, -s2);
    const cd epap = ep * ap, emam = em * am;
    struct {
        cd G, dG_dx, dG_dp;
    } G;
    G.G = std::conj(nu) * (0.5 / std::norm(nu)) + 0.25 * s * (epap + emam);
    G.dG_dx = 0.5 * s * k * cd(0.0, 1.0) * (epap - emam);
    G.dG_dp = 0.5 * s * (k / cfg.mass) * cd(0.0, 1.0) * (emam * am - epap * ap);
    const double w = cfg.pump.U * cfg.pump.U * std::norm(cfg.alpha);
    DissipativeTerms t;
    t.force1 = w * 2.0 * std::real(cd(0.0, 1.0) * G.G) * d1;
    t.force2 = -w * std::real(G.dG_dp) * d2;
    t.D_pp = 2.0 * w * std::real(G.dG_dx) * d1;
    t.D_xp = -w * std::real(G.dG_dp) * d1;
    return t;
}

double reference_energy(const SimulationConfig& cfg) {
    const double ratio = cfg.pump.Delta / cfg.pump.kappa;
    return ratio > 0.0 ? cooling_limit(1.0, ratio) * cfg.pump.kappa : 1.0;
}

}  // namespace

LocalSDE assemble_local_sde(double x, double p, const SimulationConfig& cfg) {
    LocalSDE out;
    const PhasePoint pt{x, p};
    out.drift[0] = p / cfg.mass;
    if (cfg.conservative) out.force.coherent = conservative_force(cfg.pump, cfg.alpha, pt);
    double Dpp = 0.0, Dxp = 0.0;
    if (cfg.dissipative) {
        const DissipativeTerms t = closed_form_pump(cfg)
                                       ? standing_wave_terms(x, p, cfg)
                                       : dissipative_multimode(pt, cfg.mass, cfg.pump, cfg.alpha, cfg.empty,
                                                               MultimodeOptions{cfg.memory, false});
        out.force.dissipative1 = t.force1;
        out.force.dissipative2 = t.force2;
        Dpp += t.D_pp;
        Dxp += t.D_xp;
        out.memory_warning = t.warning;
    }
    if (cfg.absorption) {
        const auto a = absorption_terms(pt, cfg.pump.geometry, cfg.alpha, cfg.gamma_abs, cfg.gamma_sca);
        out.force.absorption = a.force;
        Dpp += a.D_pp;
    }
    if (cfg.scattering) {
        const auto s = scattering_terms(pt, cfg.pump.geometry, cfg.alpha, cfg.gamma_sca, cfg.pattern,
                                        wavenumber(cfg.pump.geometry));
        out.force.scattering = s.force;
        Dpp += s.D_pp;
    }
    out.drift[1] = out.force.total();
    out.D = {0.0, Dxp, Dpp};

    if (!std::isfinite(out.drift[1]) || !std::isfinite(Dpp) || !std::isfinite(Dxp)) {
        std::ostringstream msg;
        msg << "non-finite Fokker-Planck coefficient at x = " << x << ", p = " << p;
        throw DomainError(msg.str());
    }

    if (cfg.clamp == ClampPolicy::project_psd) {
        out.factor = psd_factor_2x2(0.0, Dxp, Dpp);
    } else {
        const Factor2 probe = psd_factor_2x2(0.0, Dxp, Dpp);
        out.factor.lambda_min = probe.lambda_min;
        out.factor.lambda_max = probe.lambda_max;
        out.factor.altered = Dpp < 0.0 || Dxp != 0.0;
        out.factor.clamped_magnitude = Dpp < 0.0 ? -Dpp : 0.0;
        out.factor.B = {0.0, 0.0, 0.0, Dpp > 0.0 ? std::sqrt(Dpp) : 0.0};
    }
    return out;
}

double EnsembleStats::window_kinetic(double t_from) const {
    double sum = 0.0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < time.size(); ++i) {
        if (time[i] >= t_from) {
            sum += kinetic[i];
            ++n;
        }
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

StepLimit step_limit(const SimulationConfig& cfg) {
    StepLimit s;
    const double kp = axial_wavenumber(cfg.pump.geometry);
    double kmax = kp;
    for (const auto& ch : cfg.empty) kmax = std::max(kmax, axial_wavenumber(ch.geometry));
    s.k_eff = std::max(kp + kmax, 1e-300);

    if (cfg.v_max_expected > 0.0) {
        s.v_max = cfg.v_max_expected;
    } else {
        const double E = reference_energy(cfg);
        s.v_max = (std::abs(cfg.init.p0) + 4.0 * cfg.init.p_sigma) / cfg.mass + 5.0 * std::sqrt(2.0 * E / cfg.mass);
    }

    const double n = std::norm(cfg.alpha);
    auto channel_bound = [&](const ModeChannel& ch) {
        const double nu4 = std::pow(ch.kappa * ch.kappa + ch.Delta * ch.Delta, 2);
        const double k2 = s.k_eff * s.k_eff;
        return 4.0 * ch.kappa * ch.U * ch.U * n * (std::abs(ch.Delta) * k2 + k2 * k2 / (2.0 * cfg.mass)) /
               (cfg.mass * nu4);
    };
    if (cfg.dissipative) {
        s.rate_bound = channel_bound(cfg.pump);
        for (const auto& ch : cfg.empty) s.rate_bound += channel_bound(ch);
    }
    if (cfg.conservative) s.trap_frequency = std::sqrt(std::abs(cfg.pump.U) * n * s.k_eff * s.k_eff / cfg.mass);

    s.dt = 0.25 / (s.k_eff * s.v_max);
    if (s.rate_bound > 0.0) s.dt = std::min(s.dt, 0.01 / s.rate_bound);
    if (s.trap_frequency > 0.0) s.dt = std::min(s.dt, 0.05 / s.trap_frequency);
    return s;
}

EnsembleStats run_ensemble(const SimulationConfig& cfg) {
    if (cfg.trajectories < 1) throw DomainError("need at least one trajectory");
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) throw DomainError("dt and t_end must be positive");
    if (!(cfg.mass > 0.0)) throw DomainError("mass must be positive");
    if (cfg.record_every < 1) throw DomainError("record_every must be at least 1");
    cfg.pump.validate();
    for (const auto& ch : cfg.empty) ch.validate();
    if (!cfg.force) {
        double worst = std::abs(cfg.pump.U) * std::abs(cfg.alpha);
        for (const auto& ch : cfg.empty) worst = std::max(worst, std::abs(ch.U) * std::abs(cfg.alpha));
        if (worst >= validity_fail_threshold) {
            throw DomainError("weak-coupling condition violated (|U alpha|/kappa >= 1); set force to run anyway");
        }
    }
    const StepLimit lim = step_limit(cfg);
    if (cfg.dt > lim.dt * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "time step " << cfg.dt << " exceeds the limit " << lim.dt;
        throw TimeStepError(msg.str(), lim.dt);
    }

    const auto steps = static_cast<std::size_t>(std::llround(cfg.t_end / cfg.dt));
    std::vector<std::size_t> record_steps;
    for (std::size_t s = 0; s <= steps; s += cfg.record_every) record_steps.push_back(s);
    if (record_steps.back() != steps) record_steps.push_back(steps);
    const std::size_t R = record_steps.size();

    const std::size_t N = cfg.trajectories;
    const std::size_t blocks = (N + block_size - 1) / block_size;
    struct Block {
        std::vector<double> e, e2, p, xm;
        std::size_t altered = 0, clamped = 0;
        double magnitude = 0.0;
        bool warning = false;
    };
    std::vector<Block> results(blocks);
    std::vector<double> final_p(N);

    auto run_block = [&](std::size_t b) {
        Block blk;
        blk.e.assign(R, 0.0);
        blk.e2.assign(R, 0.0);
        blk.p.assign(R, 0.0);
        blk.xm.assign(R, 0.0);
        const std::size_t lo = b * block_size, hi = std::min(N, lo + block_size);
        const double sdt = std::sqrt(cfg.dt);
        for (std::size_t i = lo; i < hi; ++i) {
            auto rng = trajectory_rng(cfg.seed, i);
            boost::random::normal_distribution<double> normal(0.0, 1.0);
            std::uniform_real_distribution<double> uni(0.0, two_pi);
            double x = cfg.init.x_uniform ? uni(rng) : cfg.init.x0;
            double p = cfg.init.p0 + (cfg.init.p_sigma > 0.0 ? cfg.init.p_sigma * normal(rng) : 0.0);
            std::size_t next = 0;
            for (std::size_t s = 0;; ++s) {
                if (next < R && record_steps[next] == s) {
                    const double e = p * p / (2.0 * cfg.mass);
                    blk.e[next] += e;
                    blk.e2[next] += e * e;
                    blk.p[next] += p;
                    double xm = std::fmod(x, std::numbers::pi);
                    if (xm < 0.0) xm += std::numbers::pi;
                    blk.xm[next] += xm;
                    ++next;
                }
                if (s == steps) break;
                const LocalSDE sde = assemble_local_sde(x, p, cfg);
                if (sde.factor.altered) {
                    ++blk.altered;
                    blk.magnitude += sde.factor.clamped_magnitude;
                }
                if (sde.significantly_clamped()) ++blk.clamped;
                blk.warning = blk.warning || sde.memory_warning;
                const double w0 = sdt * normal(rng), w1 = sdt * normal(rng);
                const auto& B = sde.factor.B;
                x += sde.drift[0] * cfg.dt + B[0] * w0 + B[1] * w1;
                p += sde.drift[1] * cfg.dt + B[2] * w0 + B[3] * w1;
            }
            final_p[i] = p;
        }
        results[b] = std::move(blk);
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(blocks)));
    if (threads == 1) {
        for (std::size_t b = 0; b < blocks; ++b) run_block(b);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::exception_ptr> errors(threads);
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back([&, t] {
                try {
                    for (std::size_t b; (b = next.fetch_add(1)) < blocks;) run_block(b);
                } catch (...) {
                    errors[t] = std::current_exception();
                    next = blocks;
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& e : errors) {
            if (e) std::rethrow_exception(e);
        }
    }

    EnsembleStats st;
    st.trajectories = N;
    st.steps = steps;
    st.dt = cfg.dt;
    std::vector<double> e(R, 0.0), e2(R, 0.0), pm(R, 0.0), xm(R, 0.0);
    std::size_t altered = 0, clamped = 0;
    double magnitude = 0.0;
    for (const auto& blk : results) {
        for (std::size_t r = 0; r < R; ++r) {
            e[r] += blk.e[r];
            e2[r] += blk.e2[r];
            pm[r] += blk.p[r];
            xm[r] += blk.xm[r];
        }
        altered += blk.altered;
        clamped += blk.clamped;
        magnitude += blk.magnitude;
        st.memory_warning = st.memory_warning || blk.warning;
    }
    const double invN = 1.0 / static_cast<double>(N);
    for (std::size_t r = 0; r < R; ++r) {
        st.time.push_back(static_cast<double>(record_steps[r]) * cfg.dt);
        const double mean = e[r] * invN;
        st.kinetic.push_back(mean);
        const double var = std::max(0.0, e2[r] * invN - mean * mean);
        st.kinetic_sem.push_back(N > 1 ? std::sqrt(var / static_cast<double>(N - 1)) : 0.0);
        st.mean_p.push_back(pm[r] * invN);
        st.mean_x_mod.push_back(xm[r] * invN);
    }
    const double total_steps = static_cast<double>(steps) * static_cast<double>(N);
    if (total_steps > 0.0) {
        st.altered_fraction = static_cast<double>(altered) / total_steps;
        st.clamped_fraction = static_cast<double>(clamped) / total_steps;
    }
    st.mean_clamped_magnitude = altered ? magnitude / static_cast<double>(altered) : 0.0;

    const auto [mn, mx] = std::minmax_element(final_p.begin(), final_p.end());
    double lo = *mn, hi = *mx;
    if (hi <= lo) {
        lo -= 0.5;
        hi += 0.5;
    }
    const std::size_t bins = std::max<std::size_t>(1, cfg.histogram_bins);
    for (std::size_t i = 0; i <= bins; ++i) st.histogram_edges.push_back(lo + (hi - lo) * i / bins);
    st.histogram_counts.assign(bins, 0);
    for (double p : final_p) {
        auto idx = static_cast<std::size_t>((p - lo) / (hi - lo) * bins);
        st.histogram_counts[std::min(idx, bins - 1)]++;
    }
    return st;
}

std::vector<CaptureRow> velocity_capture_scan(const std::vector<double>& kv, const std::vector<double>& Delta,
                                              const CaptureOptions& opt) {
    std::vector<CaptureRow> rows;
    std::uint64_t index = 0;
    for (double D : Delta) {
        for (double v : kv) {
            CaptureRow row;
            row.Delta = D;
            row.kv = v;
            row.force = fp_averaged(v, 1.0, D, opt.coupling).force;
            if (opt.samples > 0) {
                auto rng = trajectory_rng(opt.seed, index);
                std::uniform_real_distribution<double> uni(0.0, two_pi);
                const double p = opt.mass * v;
                const double w = opt.coupling * opt.coupling;
                const double h = opt.window / static_cast<double>(opt.substeps);
                double sum = 0.0, sum2 = 0.0, sec = 0.0;
                for (std::size_t s = 0; s < opt.samples; ++s) {
                    const double x0 = uni(rng);
                    double impulse = 0.0, impulse2 = 0.0;
                    for (std::size_t j = 0; j < opt.substeps; ++j) {
                        const double x = x0 + v * (static_cast<double>(j) + 0.5) * h;
                        const auto G = memory_integral_fp_closed(x, p, opt.mass, 1.0, D);
                        const double d1 = -std::sin(2.0 * x), d2 = -2.0 * std::cos(2.0 * x);
                        impulse += w * 2.0 * std::real(cd(0.0, 1.0) * G.G) * d1 * h;
                        impulse2 += -w * std::real(G.dG_dp) * d2 * h;
                    }
                    const double f = impulse / opt.window;
                    sum += f;
                    sum2 += f * f;
                    sec += impulse2 / opt.window;
                }
                const double n = static_cast<double>(opt.samples);
                row.simulated = sum / n;
                row.simulated_sem = n > 1 ? std::sqrt(std::max(0.0, sum2 / n - row.simulated * row.simulated) / (n - 1)) : 0.0;
                row.second_order = sec / n;
            }
            rows.push_back(row);
            ++index;
        }
    }
    return rows;
}

}  // namespace cavitycool
