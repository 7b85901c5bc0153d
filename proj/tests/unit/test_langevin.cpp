#include "doctest.h"

#include <numeric>
#include <string>

#include "cavitycool/errors.hpp"
#include "cavitycool/langevin.hpp"
#include "gen.hpp"

using namespace cavitycool;
using doctest::Approx;

namespace {

const double pi = M_PI;
const double opt_delta = 1.0 / std::sqrt(3.0);

SimulationConfig cos_config() {
    SimulationConfig cfg;
    cfg.mass = 500.0;
    cfg.pump = ModeChannel{PlaneStanding{1.0, Parity::cos}, 1.0, opt_delta, 0.1};
    cfg.alpha = 1.0;
    return cfg;
}

double with_limit(SimulationConfig& cfg) {
    cfg.dt = step_limit(cfg).dt;
    return cfg.dt;
}

}  // namespace

TEST_CASE("local SDE assembly") {
    auto cfg = cos_config();
    testgen::for_all(200, 71, [&](testgen::Gen& g) {
        const double x = g.uniform(-10, 10), p = cfg.mass * g.uniform(-3, 3);
        const auto s = assemble_local_sde(x, p, cfg);
        const auto ref = dissipative_single({x, p}, cfg.mass, cfg.pump, cfg.alpha);
        CHECK(s.drift[0] == p / cfg.mass);
        CHECK(s.force.coherent == conservative_force(cfg.pump, cfg.alpha, {x, p}));
        CHECK(s.force.dissipative1 == Approx(ref.force1).epsilon(1e-12).scale(1e-12));
        CHECK(s.force.dissipative2 == Approx(ref.force2).epsilon(1e-10).scale(1e-14));
        CHECK(s.D[2] == Approx(ref.D_pp).epsilon(1e-12).scale(1e-12));
        CHECK(s.D[1] == Approx(ref.D_xp).epsilon(1e-10).scale(1e-14));
        CHECK(s.D[0] == 0.0);
        CHECK(s.drift[1] == s.force.total());
    });

    CHECK_THROWS_WITH_AS((void)assemble_local_sde(0.3, NAN, cfg), doctest::Contains("x = 0.3"), DomainError);

    cfg.clamp = ClampPolicy::zero_negative_Dpp;
    const auto z = assemble_local_sde(0.4, 2500.0, cfg);
    CHECK(z.factor.B[0] == 0.0);
    CHECK(z.factor.B[1] == 0.0);
    CHECK(z.factor.B[2] == 0.0);
    CHECK(z.factor.B[3] == Approx(std::sqrt(std::max(z.D[2], 0.0))));
}

TEST_CASE("clamping follows the sign of the local diffusion") {
    const auto cfg = cos_config();
    const double m = cfg.mass;
    int clamped0 = 0, clamped5 = 0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = pi * i / 1000;
        if (assemble_local_sde(x, 0.0, cfg).significantly_clamped()) ++clamped0;
        const auto s = assemble_local_sde(x, 5.0 * m, cfg);
        if (s.significantly_clamped()) {
            ++clamped5;
            CHECK(fp_local_diffusion(x, 5.0, 1.0, opt_delta, 0.1) < 0.0);
        }
    }
    CHECK(clamped0 == 0);
    CHECK(clamped5 > 0);

    // at a point where the averaged-model diffusion is negative
    double worst = 0.0, xw = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double d = fp_local_diffusion(pi * i / 1000, 5.0, 1.0, opt_delta, 0.1);
        if (d < worst) worst = d, xw = pi * i / 1000;
    }
    REQUIRE(worst < 0.0);
    const auto s = assemble_local_sde(xw, 5.0 * m, cfg);
    CHECK(s.factor.altered);
    CHECK(s.factor.clamped_magnitude > 0.0);

    // a moving particle sees negative local diffusion on a finite share of the period, growing with kv
    int prev = 0;
    for (double kv : {0.05, 0.2, 0.5, 1.0}) {
        int count = 0;
        for (int i = 0; i < 1000; ++i) count += assemble_local_sde(pi * i / 1000, kv * m, cfg).significantly_clamped();
        CHECK(count > prev);
        prev = count;
    }
}

TEST_CASE("zero coupling is ballistic") {
    auto cfg = cos_config();
    cfg.pump.U = 0.0;
    cfg.trajectories = 64;
    cfg.init.p0 = 10.0;
    cfg.t_end = 500.0;
    cfg.record_every = 50;
    with_limit(cfg);
    const auto st = run_ensemble(cfg);
    for (double e : st.kinetic) CHECK(e == Approx(0.1).epsilon(1e-14));
    for (double p : st.mean_p) CHECK(p == Approx(10.0).epsilon(1e-15));
    CHECK(st.clamped_fraction == 0.0);
    CHECK(std::accumulate(st.histogram_counts.begin(), st.histogram_counts.end(), std::size_t{0}) == 64);
}

TEST_CASE("determinism") {
    auto cfg = cos_config();
    cfg.trajectories = 200;  // several blocks
    cfg.init.p0 = 100.0;
    cfg.t_end = 200.0;
    cfg.record_every = 20;
    with_limit(cfg);
    cfg.threads = 1;
    const auto a = run_ensemble(cfg);
    cfg.threads = 3;
    const auto b = run_ensemble(cfg);
    const auto c = run_ensemble(cfg);
    CHECK(a.kinetic == b.kinetic);
    CHECK(a.mean_p == b.mean_p);
    CHECK(a.mean_x_mod == b.mean_x_mod);
    CHECK(a.histogram_counts == b.histogram_counts);
    CHECK(a.altered_fraction == b.altered_fraction);
    CHECK(b.kinetic == c.kinetic);
    cfg.seed = 2;
    CHECK(run_ensemble(cfg).kinetic != a.kinetic);

    REQUIRE(a.time.size() == a.kinetic.size());
    CHECK(a.time.front() == 0.0);
    CHECK(a.time.back() == Approx(cfg.t_end).epsilon(cfg.dt / cfg.t_end));
    for (double e : a.kinetic) CHECK(e >= 0.0);
    CHECK(a.clamped_fraction >= 0.0);
    CHECK(a.clamped_fraction <= 1.0);
}

TEST_CASE("refusals") {
    auto cfg = cos_config();
    cfg.trajectories = 1;
    cfg.t_end = 10.0;
    const double lim = step_limit(cfg).dt;
    cfg.dt = 10.0 * lim;
    try {
        (void)run_ensemble(cfg);
        FAIL("oversized step accepted");
    } catch (const TimeStepError& e) {
        CHECK(e.suggested_dt == lim);
    }
    cfg.dt = lim;
    CHECK_NOTHROW((void)run_ensemble(cfg));

    cfg.pump.U = 1.5;
    with_limit(cfg);
    CHECK_THROWS_AS((void)run_ensemble(cfg), DomainError);
    cfg.force = true;
    CHECK_NOTHROW((void)run_ensemble(cfg));

    auto bad = cos_config();
    bad.trajectories = 0;
    CHECK_THROWS_AS((void)run_ensemble(bad), DomainError);
    bad = cos_config();
    bad.dt = -1.0;
    CHECK_THROWS_AS((void)run_ensemble(bad), DomainError);
}

TEST_CASE("step limit") {
    auto cfg = cos_config();
    const auto a = step_limit(cfg);
    CHECK(a.k_eff == 2.0);
    CHECK(a.dt <= 0.25 / (a.k_eff * a.v_max) * (1 + 1e-15));
    CHECK(a.dt <= 0.01 / a.rate_bound * (1 + 1e-15));
    CHECK(a.dt <= 0.05 / a.trap_frequency * (1 + 1e-15));
    cfg.pump.U = 0.2;
    const auto b = step_limit(cfg);
    CHECK(b.rate_bound == Approx(4.0 * a.rate_bound));
    CHECK(b.trap_frequency == Approx(std::sqrt(2.0) * a.trap_frequency));
    cfg.v_max_expected = 0.17;
    CHECK(step_limit(cfg).v_max == 0.17);
}

TEST_CASE("absorption moments on a running wave") {
    // constant coefficients: <p> = 2 g k t, Var p = g k^2 t
    SimulationConfig cfg;
    cfg.mass = 500.0;
    cfg.pump = ModeChannel{GaussianRunning{1.0, Axis::x}, 1.0, opt_delta, 0.0};
    cfg.alpha = 1.0;
    cfg.conservative = cfg.dissipative = false;
    cfg.absorption = true;
    cfg.gamma_abs = 1e-3;
    cfg.trajectories = 4000;
    cfg.t_end = 1000.0;
    cfg.record_every = 250;
    cfg.v_max_expected = 0.01;
    cfg.dt = 1.0;
    const auto st = run_ensemble(cfg);
    const double N = static_cast<double>(cfg.trajectories);
    for (std::size_t i = 1; i < st.time.size(); ++i) {
        const double t = st.time[i];
        const double mean = st.mean_p[i];
        const double var = 2.0 * cfg.mass * st.kinetic[i] - mean * mean;
        const double g = cfg.gamma_abs;
        CHECK(std::abs(mean - 2.0 * g * t) < 4.0 * std::sqrt(g * t / N));
        CHECK(std::abs(var - g * t) < 5.0 * g * t * std::sqrt(2.0 / N));
    }
}

TEST_CASE("early deceleration follows the averaged force") {
    auto cfg = cos_config();
    cfg.conservative = false;
    cfg.init.p0 = 0.5 * cfg.mass;
    cfg.trajectories = 10000;
    cfg.t_end = 200.0;
    cfg.record_every = 100000;
    with_limit(cfg);
    const auto st = run_ensemble(cfg);
    const double expected = fp_averaged(0.5, 1.0, opt_delta, 0.1).force * st.time.back();
    const double drop = st.mean_p.back() - cfg.init.p0;
    // noise on <p> from D_pp ~ c^2 / |nu|^2 over the run
    const double sem = std::sqrt(0.0075 * st.time.back() / cfg.trajectories);
    CHECK(drop < 0.0);
    CHECK(std::abs(drop - expected) < 4.0 * sem + 0.05 * std::abs(expected));
    CHECK(st.kinetic.back() < st.kinetic.front());
    MESSAGE("clamped fraction at kv ~ 0.5: " << st.clamped_fraction);
}

TEST_CASE("weak convergence in the step size") {
    auto cfg = cos_config();
    cfg.conservative = false;
    cfg.init.p0 = 0.5 * cfg.mass;
    cfg.trajectories = 10000;
    cfg.t_end = 2000.0;
    cfg.record_every = 1000000;
    cfg.v_max_expected = 0.6;
    with_limit(cfg);
    const auto coarse = run_ensemble(cfg);
    cfg.dt *= 0.5;
    cfg.seed = 99;
    const auto fine = run_ensemble(cfg);
    const double diff = std::abs(coarse.kinetic.back() - fine.kinetic.back());
    const double sem = std::hypot(coarse.kinetic_sem.back(), fine.kinetic_sem.back());
    MESSAGE("dt " << 2 * cfg.dt << " vs " << cfg.dt << ": " << coarse.kinetic.back() << " vs " << fine.kinetic.back()
                  << " (combined sem " << sem << ")");
    CHECK(diff < 3.0 * sem);
}

TEST_CASE("steady state does not depend on the starting position") {
    auto cfg = cos_config();
    cfg.conservative = false;
    const double E = 0.5 * cooling_limit(1.0, opt_delta);
    cfg.init.p_sigma = std::sqrt(2.0 * cfg.mass * E);
    cfg.init.x_uniform = false;
    cfg.trajectories = 2000;
    cfg.t_end = 20000.0;
    cfg.record_every = 1000;
    cfg.v_max_expected = 0.17;
    with_limit(cfg);
    cfg.init.x0 = 0.0;
    const auto a = run_ensemble(cfg);
    cfg.init.x0 = 1.0;
    cfg.seed = 7;
    const auto b = run_ensemble(cfg);
    const double ea = a.window_kinetic(10000.0), eb = b.window_kinetic(10000.0);
    const double sem = std::hypot(a.kinetic_sem.back(), b.kinetic_sem.back());
    MESSAGE("x0 = 0: " << ea << ", x0 = 1: " << eb << " (sem " << sem << ")");
    CHECK(std::abs(ea - eb) < 4.0 * sem);
    CHECK(a.clamped_fraction < 0.01);
    CHECK(b.clamped_fraction < 0.01);
}

TEST_CASE("velocity capture scan") {
    std::vector<double> kv;
    for (int i = -40; i <= 40; ++i) kv.push_back(0.25 * i);
    const std::vector<double> deltas = {opt_delta, 2.0, 5.0};
    const auto rows = velocity_capture_scan(kv, deltas, CaptureOptions{});
    REQUIRE(rows.size() == kv.size() * deltas.size());
    const std::size_t n = kv.size(), mid = n / 2;

    double slope[3], argmax[3];
    for (std::size_t d = 0; d < 3; ++d) {
        const auto* r = &rows[d * n];
        CHECK(r[mid].force == 0.0);
        for (std::size_t i = 0; i < n; ++i) CHECK(r[i].force == -r[n - 1 - i].force);
        slope[d] = (r[mid + 1].force - r[mid - 1].force) / (2 * 0.25);
        double best = 0.0;
        for (std::size_t i = mid; i < n; ++i) {
            if (std::abs(r[i].force) > best) best = std::abs(r[i].force), argmax[d] = r[i].kv;
        }
        CHECK(r[mid + 1].force < 0.0);  // red detuning damps
    }
    CHECK(std::abs(slope[0]) > std::abs(slope[1]));
    CHECK(std::abs(slope[0]) > std::abs(slope[2]));
    CHECK(argmax[2] > argmax[0]);

    // Monte Carlo free-flight impulses against the averaged force
    CaptureOptions mc;
    mc.samples = 4000;
    mc.seed = 5;
    const auto sim = velocity_capture_scan({-2.0, -0.5, 0.3, 1.0, 4.0}, {opt_delta, 3.0}, mc);
    for (const auto& r : sim) {
        CHECK(r.simulated_sem > 0.0);
        CHECK(std::abs(r.simulated - r.force) < 4.0 * r.simulated_sem + 1e-3 * std::abs(r.force));
    }
}
