#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "cavitycool/catalogue.hpp"
#include "cavitycool/coefficients.hpp"
#include "cavitycool/confocal.hpp"
#include "cavitycool/errors.hpp"
#include "cavitycool/langevin.hpp"
#include "command.hpp"

#ifndef CAVITYCOOL_DEFAULT_DATA_DIR
#define CAVITYCOOL_DEFAULT_DATA_DIR "data"
#endif

namespace cavitycool::cli {

namespace {

constexpr double opt_delta = 0.5773502691896258;  // 1/sqrt(3)
const std::string data_dir = CAVITYCOOL_DEFAULT_DATA_DIR;

// Cavity of the species table: lambda = 1.5 um, V = 0.1 mm^3, kappa = 1 MHz.
struct CavitySettings {
    double wavelength_um = 1.5;
    double volume_mm3 = 0.1;
    double kappa_MHz = 1.0;

    void add_to(ParamSet& p) {
        p.add("wavelength_um", wavelength_um, "pump wavelength [um]");
        p.add("volume_mm3", volume_mm3, "mode volume [mm^3]");
        p.add("kappa_MHz", kappa_MHz, "cavity field decay rate [1e6 /s]");
    }
    [[nodiscard]] CavityGeometry geometry() const {
        return {si::cubic_millimetres(volume_mm3), si::micrometres(wavelength_um), si::megahertz(kappa_MHz)};
    }
};

std::vector<double> linspace(double a, double b, std::size_t n) {
    if (n < 2) return {a};
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

// ---------------------------------------------------------------- table1

Command table1() {
    struct S {
        std::string catalogue = data_dir + "/species.cat";
        std::string reference = data_dir + "/table1_reference.txt";
        CavitySettings cavity;
        double max_deviation = 0.10;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("table1");
    p->add("catalogue", s->catalogue, "species catalogue");
    p->add("reference", s->reference, "reference derived columns to check against");
    s->cavity.add_to(*p);
    p->add("max_deviation", s->max_deviation, "allowed relative deviation of exact cells");

    auto run = [s](Context& ctx) {
        const auto cav = s->cavity.geometry();
        ctx.input(s->catalogue);
        ctx.input(s->reference);
        const auto cat = load_catalogue(s->catalogue, cav.wavelength);
        const auto ref = load_reference_table(s->reference);

        Csv table({"label", "omega_r_MHz", "U0_MHz", "two_gamma_abs_MHz", "two_gamma_sca_MHz"});
        for (const auto& sp : cat) {
            const auto r = derive_rates(sp, cav);
            table.row() << sp.label << si::to_megahertz(r.omega_r) << si::to_megahertz(r.U0)
                        << 2.0 * si::to_megahertz(r.gamma_abs) << 2.0 * si::to_megahertz(r.gamma_sca);
        }
        ctx.write("table1.csv", table.str());

        bool ok = !cat.empty();
        if (cat.empty()) *ctx.err << "table1: catalogue is empty\n";
        Csv check({"label", "column", "computed", "reference", "approximate", "deviation", "status"});
        std::size_t failures = 0, missing = 0;
        for (const auto& row : ref) {
            const auto* sp = find_species(cat, row.label);
            if (!sp) {
                *ctx.err << "table1: species " << row.label << " missing from the catalogue, skipped\n";
                ++missing;
                continue;
            }
            const auto r = derive_rates(*sp, cav);
            const double got[4] = {si::to_megahertz(r.omega_r), std::abs(si::to_megahertz(r.U0)),
                                   2.0 * si::to_megahertz(r.gamma_abs), 2.0 * si::to_megahertz(r.gamma_sca)};
            const ReferenceCell* cells[4] = {&row.omega_r, &row.U0, &row.two_gamma_abs, &row.two_gamma_sca};
            const char* names[4] = {"omega_r", "U0", "two_gamma_abs", "two_gamma_sca"};
            for (int i = 0; i < 4; ++i) {
                const auto& cell = *cells[i];
                double dev = 0.0;
                bool pass;
                if (!cell.value) {
                    pass = got[i] == 0.0;
                    dev = got[i] == 0.0 ? 0.0 : INFINITY;
                } else if (cell.approximate) {
                    // printed as an order of magnitude
                    dev = std::abs(std::log10(got[i] / *cell.value));
                    pass = dev <= 1.0;
                } else {
                    dev = std::abs(got[i] / *cell.value - 1.0);
                    pass = dev <= s->max_deviation;
                }
                if (!pass) ++failures;
                check.row() << row.label << std::string(names[i]) << got[i]
                            << (cell.value ? format_double(*cell.value) : std::string("-"))
                            << std::string(cell.approximate ? "yes" : "no") << dev
                            << std::string(pass ? "ok" : "FAIL");
            }
        }
        ctx.write("table1_check.csv", check.str());
        ctx.summary["species"] = cat.size();
        ctx.summary["failed_cells"] = failures;
        ctx.summary["missing_species"] = missing;
        *ctx.out << "table1: " << cat.size() << " species, " << failures << " cells outside tolerance, " << missing
                 << " missing\n";
        return ok && failures == 0 && missing == 0 ? exit_ok : exit_validation;
    };
    return {"table1", "derived coupling parameters of the species catalogue, checked against the reference table",
            p, run};
}

// ------------------------------------------------------------- forcescan

Command forcescan() {
    struct S {
        std::vector<double> Delta = {opt_delta, 2.0, 5.0};
        double kv_min = -10.0, kv_max = 10.0;
        std::size_t kv_points = 401;
        double coupling = 0.1;
        double omega_r = 1e-3;
        std::size_t samples = 0;
        double window = 1.0;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("forcescan");
    p->add("Delta", s->Delta, "detunings in units of kappa");
    p->add("kv_min", s->kv_min, "lowest Doppler shift kv/kappa");
    p->add("kv_max", s->kv_max, "highest Doppler shift kv/kappa");
    p->add("kv_points", s->kv_points, "grid points in kv");
    p->add("coupling", s->coupling, "|U0 alpha|/kappa");
    p->add("omega_r", s->omega_r, "recoil frequency / kappa");
    p->add("samples", s->samples, "Monte Carlo free-flight samples per point (0: analytic only)");
    p->add("window", s->window, "flight time per sample, 1/kappa");

    auto run = [s](Context& ctx) {
        if (s->kv_points < 1 || !(s->omega_r > 0.0)) throw DomainError("forcescan needs kv_points >= 1 and omega_r > 0");
        CaptureOptions opt;
        opt.coupling = s->coupling;
        opt.mass = 0.5 / s->omega_r;
        opt.samples = s->samples;
        opt.window = s->window;
        opt.seed = ctx.seed;
        const auto rows = velocity_capture_scan(linspace(s->kv_min, s->kv_max, s->kv_points), s->Delta, opt);
        Csv csv({"Delta", "kv", "force", "simulated", "simulated_sem", "second_order"});
        for (const auto& r : rows) {
            csv.row() << r.Delta << r.kv << r.force << r.simulated << r.simulated_sem << r.second_order;
        }
        ctx.write("forcescan.csv", csv.str());
        *ctx.out << "forcescan: " << rows.size() << " points\n";
        return exit_ok;
    };
    return {"forcescan", "position-averaged dissipative force against velocity for several detunings", p, run};
}

// -------------------------------------------------------------- diffscan

Command diffscan() {
    struct S {
        std::vector<double> kv = {0.0, 0.5, 5.0};
        std::size_t kx_points = 201;
        double Delta = opt_delta;
        double coupling = 0.1;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("diffscan");
    p->add("kv", s->kv, "Doppler shifts kv/kappa");
    p->add("kx_points", s->kx_points, "grid points over one period kx in [0, pi]");
    p->add("Delta", s->Delta, "detuning / kappa");
    p->add("coupling", s->coupling, "|U0 alpha|/kappa");

    auto run = [s](Context& ctx) {
        if (s->kx_points < 2) throw DomainError("diffscan needs at least two kx points");
        Csv csv({"kv", "kx", "D_pp", "D_pp_averaged"});
        nlohmann::ordered_json mins = nlohmann::ordered_json::object();
        for (double kv : s->kv) {
            const double avg = fp_averaged(kv, 1.0, s->Delta, s->coupling).D_pp;
            double lo = INFINITY;
            for (double kx : linspace(0.0, std::numbers::pi, s->kx_points)) {
                const double d = fp_local_diffusion(kx, kv, 1.0, s->Delta, s->coupling);
                lo = std::min(lo, d);
                csv.row() << kv << kx << d << avg;
            }
            mins[format_double(kv)] = lo;
        }
        ctx.write("diffscan.csv", csv.str());
        ctx.summary["min_D_pp_by_kv"] = mins;
        *ctx.out << "diffscan: " << s->kv.size() << " velocities\n";
        return exit_ok;
    };
    return {"diffscan", "position-resolved momentum diffusion of a standing-wave mode", p, run};
}

// -------------------------------------------------------------- confocal

Command confocal() {
    struct S {
        std::vector<int> profile_caps = {0, 8, 18};
        int sweep_max = 54;
        std::size_t kx_points = 201;
        double mirror_distance_mm = 10.0;
        std::size_t n0 = 20000;
        double Delta = opt_delta;
        double coupling = 0.1;
        double omega_r = 1e-3;
        double halfwidth = 4.0;
        std::size_t min_points = 64, max_points = 1024;
        double rel_tol = 1e-4;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("confocal");
    p->add("profile_caps", s->profile_caps, "caps on 2m+l for the friction profiles (M = 1, 15, 55)");
    p->add("sweep_max", s->sweep_max, "largest even cap of the mode-number sweep (54: M = 406)");
    p->add("kx_points", s->kx_points, "profile points over kx in [0, pi]");
    p->add("mirror_distance_mm", s->mirror_distance_mm, "mirror distance d [mm]");
    p->add("n0", s->n0, "longitudinal index of the pumped mode");
    p->add("Delta", s->Delta, "detuning / kappa");
    p->add("coupling", s->coupling, "|U alpha|/kappa, equal for all modes");
    p->add("omega_r", s->omega_r, "recoil frequency / kappa");
    p->add("halfwidth", s->halfwidth, "transverse averaging half-width in fundamental waists");
    p->add("min_points", s->min_points, "starting transverse grid per axis");
    p->add("max_points", s->max_points, "largest transverse grid per axis");
    p->add("rel_tol", s->rel_tol, "relative change that ends grid doubling");

    auto run = [s](Context& ctx) {
        ConfocalFrictionConfig cfg;
        cfg.setup.mirror_distance = s->mirror_distance_mm * 1e-3;
        cfg.setup.n0 = static_cast<long>(s->n0);
        cfg.Delta = s->Delta;
        cfg.coupling = s->coupling;
        cfg.omega_r = s->omega_r;
        cfg.average_halfwidth = s->halfwidth;
        cfg.min_points = static_cast<int>(s->min_points);
        cfg.max_points = static_cast<int>(s->max_points);
        cfg.rel_tol = s->rel_tol;
        if (s->kx_points < 2 || s->sweep_max < 0) throw DomainError("confocal needs kx_points >= 2 and sweep_max >= 0");

        bool converged = true;
        const auto kx = linspace(0.0, std::numbers::pi, s->kx_points);
        Csv prof({"cap", "modes", "kx", "beta", "beta_first"});
        for (int cap : s->profile_caps) {
            const auto pr = confocal_friction_profile(cfg, cap, kx);
            converged = converged && pr.overlaps.converged;
            for (std::size_t i = 0; i < kx.size(); ++i) {
                prof.row() << cap << pr.modes << kx[i] << pr.beta[i] << pr.beta_first[i];
            }
        }
        ctx.write("confocal_profile.csv", prof.str());

        std::vector<int> caps;
        for (int c = 0; c <= s->sweep_max; c += 2) caps.push_back(c);
        const auto sw = confocal_friction_sweep(cfg, caps);
        converged = converged && sw.overlaps.converged;
        Csv sweep({"cap", "modes", "mean_beta", "relative"});
        for (std::size_t i = 0; i < sw.modes.size(); ++i) {
            sweep.row() << sw.max_order[i] << sw.modes[i] << sw.mean_beta[i] << sw.relative[i];
        }
        ctx.write("confocal_sweep.csv", sweep.str());
        ctx.summary["transverse_grid_converged"] = converged;
        ctx.summary["transverse_points"] = sw.overlaps.points;
        *ctx.out << "confocal: " << sw.modes.back() << " modes at cap " << s->sweep_max << ", relative friction "
                 << format_double(sw.relative.back()) << (converged ? "" : " (transverse grid NOT converged)") << "\n";
        return converged ? exit_ok : exit_validation;
    };
    return {"confocal", "multimode friction in a confocal resonator against position and mode number", p, run};
}

// ------------------------------------------------------------------ cool

Command cool() {
    struct S {
        double omega_r = 1e-3;
        double Delta = opt_delta;
        double coupling = 0.1;
        double kv0 = 0.5;
        double kv_sigma = 0.0;
        std::size_t trajectories = 10000;
        double t_end = 1.4e5;
        double window_from = 1.0e5;
        double dt = 0.0;
        double v_max = 0.17;
        std::size_t records = 1400;
        bool conservative = false;
        std::string clamp = "project_psd";
        bool absorption = false;
        bool scattering = false;
        double gamma_abs = 0.0;
        double gamma_sca = 0.0;
        std::size_t histogram_bins = 64;
        bool force = false;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("cool");
    p->add("omega_r", s->omega_r, "recoil frequency / kappa");
    p->add("Delta", s->Delta, "detuning / kappa");
    p->add("coupling", s->coupling, "|U0 alpha|/kappa");
    p->add("kv0", s->kv0, "initial Doppler shift kv/kappa");
    p->add("kv_sigma", s->kv_sigma, "spread of the initial Doppler shift");
    p->add("trajectories", s->trajectories, "ensemble size");
    p->add("t_end", s->t_end, "run length, 1/kappa");
    p->add("window_from", s->window_from, "start of the steady-state averaging window, 1/kappa");
    p->add("dt", s->dt, "time step, 1/kappa (0: largest allowed)");
    p->add("v_max", s->v_max, "expected largest speed for the step limit (0: derived)");
    p->add("records", s->records, "approximate number of recorded times");
    p->add("conservative", s->conservative, "include the optical potential");
    p->add("clamp", s->clamp, "project_psd or zero_negative_Dpp");
    p->add("absorption", s->absorption, "include absorption recoil");
    p->add("scattering", s->scattering, "include scattering recoil");
    p->add("gamma_abs", s->gamma_abs, "absorption rate / kappa");
    p->add("gamma_sca", s->gamma_sca, "scattering rate / kappa");
    p->add("histogram_bins", s->histogram_bins, "bins of the final momentum histogram");
    p->add("force", s->force, "run even if the weak-coupling condition fails");

    auto run = [s](Context& ctx) {
        if (!(s->omega_r > 0.0)) throw DomainError("omega_r must be positive");
        SimulationConfig cfg;
        cfg.mass = 0.5 / s->omega_r;
        cfg.pump = ModeChannel{PlaneStanding{1.0, Parity::cos}, 1.0, s->Delta, s->coupling};
        cfg.alpha = 1.0;
        cfg.conservative = s->conservative;
        cfg.absorption = s->absorption;
        cfg.scattering = s->scattering;
        cfg.gamma_abs = s->gamma_abs;
        cfg.gamma_sca = s->gamma_sca;
        cfg.memory.tolerance = ctx.tolerance;
        cfg.trajectories = s->trajectories;
        cfg.t_end = s->t_end;
        cfg.seed = ctx.seed;
        cfg.threads = ctx.threads;
        cfg.force = s->force;
        cfg.histogram_bins = s->histogram_bins;
        cfg.init.p0 = s->kv0 * cfg.mass;
        cfg.init.p_sigma = s->kv_sigma * cfg.mass;
        cfg.v_max_expected = s->v_max;
        if (s->clamp == "project_psd") cfg.clamp = ClampPolicy::project_psd;
        else if (s->clamp == "zero_negative_Dpp") cfg.clamp = ClampPolicy::zero_negative_Dpp;
        else throw ConfigError("clamp must be project_psd or zero_negative_Dpp");
        cfg.dt = s->dt > 0.0 ? s->dt : step_limit(cfg).dt;
        const double steps = std::round(cfg.t_end / cfg.dt);
        cfg.record_every = std::max<std::size_t>(1, static_cast<std::size_t>(steps / std::max<double>(1.0, s->records)));

        const auto st = run_ensemble(cfg);
        Csv csv({"t", "kinetic", "kinetic_sem", "mean_p", "mean_x_mod_pi"});
        for (std::size_t i = 0; i < st.time.size(); ++i) {
            csv.row() << st.time[i] << st.kinetic[i] << st.kinetic_sem[i] << st.mean_p[i] << st.mean_x_mod[i];
        }
        ctx.write("cool.csv", csv.str());
        Csv hist({"p_low", "p_high", "count"});
        for (std::size_t i = 0; i < st.histogram_counts.size(); ++i) {
            hist.row() << st.histogram_edges[i] << st.histogram_edges[i + 1] << st.histogram_counts[i];
        }
        ctx.write("cool_histogram.csv", hist.str());

        const double steady = st.window_kinetic(s->window_from);
        const double limit = s->Delta > 0.0 ? cooling_limit(1.0, s->Delta) : NAN;
        ctx.summary["dt"] = st.dt;
        ctx.summary["steps"] = st.steps;
        ctx.summary["steady_kinetic"] = steady;
        ctx.summary["cooling_limit"] = limit;
        ctx.summary["clamped_fraction"] = st.clamped_fraction;
        ctx.summary["altered_fraction"] = st.altered_fraction;
        ctx.summary["mean_clamped_magnitude"] = st.mean_clamped_magnitude;
        *ctx.out << "cool: steady <p^2/2m> = " << format_double(steady) << " hbar kappa (cooling limit "
                 << format_double(limit) << "), clamped fraction " << format_double(st.clamped_fraction) << "\n";
        if (st.clamped_fraction > 0.01) {
            *ctx.err << "cool: diffusion matrix was significantly non-positive in "
                     << format_double(100.0 * st.clamped_fraction) << "% of steps (limit 1%)\n";
            return exit_validation;
        }
        return exit_ok;
    };
    return {"cool", "Langevin ensemble of a particle cooled in a standing-wave mode", p, run};
}

// ---------------------------------------------------------------- budget

Command budget() {
    struct S {
        std::string catalogue = data_dir + "/species.cat";
        std::string species;
        CavitySettings cavity;
        double photon_number = 1e12;
        double Delta = opt_delta;
        double pump_waist = 200.0;
        std::string pattern = "isotropic";
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("budget");
    p->add("catalogue", s->catalogue, "species catalogue");
    p->add("species", s->species, "one species label (empty: all)");
    s->cavity.add_to(*p);
    p->add("photon_number", s->photon_number, "pump photon number |alpha|^2");
    p->add("Delta", s->Delta, "detuning / kappa");
    p->add("pump_waist", s->pump_waist, "transverse pump waist in 1/k (perpendicular pump)");
    p->add("pattern", s->pattern, "scattering pattern: isotropic or dipole");

    auto run = [s](Context& ctx) {
        const auto cav = s->cavity.geometry();
        ctx.input(s->catalogue);
        const auto cat = load_catalogue(s->catalogue, cav.wavelength);
        BudgetOptions opt;
        opt.pump_waist = s->pump_waist;
        if (s->pattern == "isotropic") opt.pattern = ScatteringPattern::isotropic();
        else if (s->pattern == "dipole") opt.pattern = ScatteringPattern::dipole_parallel_x();
        else throw ConfigError("pattern must be isotropic or dipole");
        const auto pump = PumpConfig::from_photon_number(s->photon_number, cav.kappa * s->Delta);

        std::vector<const ParticleSpecies*> chosen;
        for (const auto& sp : cat) {
            if (s->species.empty() || sp.label == s->species) chosen.push_back(&sp);
        }
        if (chosen.empty()) throw ConfigError("no species matches '" + s->species + "'");
        Csv csv({"label", "orientation", "cavity", "absorption", "scattering_uptake", "scattering", "absorption_ratio",
                 "scattering_uptake_ratio", "scattering_ratio", "inflation"});
        for (const auto* sp : chosen) {
            for (auto orient : {PumpOrientation::axial, PumpOrientation::perpendicular}) {
                opt.orientation = orient;
                const auto b = diffusion_budget(*sp, cav, pump, opt);
                csv.row() << sp->label << std::string(orient == PumpOrientation::axial ? "axial" : "perpendicular")
                          << b.cavity << b.absorption << b.scattering_uptake << b.scattering << b.absorption_ratio
                          << b.scattering_uptake_ratio << b.scattering_ratio << b.inflation;
            }
        }
        ctx.write("budget.csv", csv.str());
        *ctx.out << "budget: " << chosen.size() << " species\n";
        return exit_ok;
    };
    return {"budget", "absorption and scattering diffusion relative to cavity diffusion", p, run};
}

// -------------------------------------------------------------- validate

Command validate() {
    struct S {
        std::string catalogue = data_dir + "/species.cat";
        std::string species = "Li1000";
        CavitySettings cavity;
        double photon_number = 1e12;
        double Delta = opt_delta;
        std::size_t particles = 1;
        double kv = 0.0;
    };
    auto s = std::make_shared<S>();
    auto p = std::make_shared<ParamSet>("validate");
    p->add("catalogue", s->catalogue, "species catalogue");
    p->add("species", s->species, "species label");
    s->cavity.add_to(*p);
    p->add("photon_number", s->photon_number, "pump photon number |alpha|^2");
    p->add("Delta", s->Delta, "detuning / kappa");
    p->add("particles", s->particles, "number of particles sharing the mode");
    p->add("kv", s->kv, "Doppler shift kv/kappa for the free-flight check (0: skip)");

    auto run = [s](Context& ctx) {
        const auto cav = s->cavity.geometry();
        ctx.input(s->catalogue);
        const auto cat = load_catalogue(s->catalogue, cav.wavelength);
        const auto* sp = find_species(cat, s->species);
        if (!sp) throw ConfigError("species '" + s->species + "' not in the catalogue");
        const auto pump = PumpConfig::from_photon_number(s->photon_number, cav.kappa * s->Delta);
        std::optional<Rate> kv;
        if (s->kv != 0.0) kv = cav.kappa * s->kv;
        const auto rep = validity_report(*sp, cav, pump, static_cast<int>(s->particles), kv);
        Csv csv({"check", "ratio", "verdict"});
        for (const auto& c : rep.checks) csv.row() << c.name << c.ratio << std::string(to_string(c.verdict));
        ctx.write("validate.csv", csv.str());
        ctx.summary["verdict"] = to_string(rep.overall());
        *ctx.out << "validate: " << sp->label << " " << to_string(rep.overall()) << "\n";
        for (const auto& c : rep.checks) {
            if (c.verdict != Verdict::pass) {
                *ctx.err << "validate: " << c.name << " = " << format_double(c.ratio) << " (" << to_string(c.verdict)
                         << ")\n";
            }
        }
        return rep.overall() == Verdict::fail ? exit_validation : exit_ok;
    };
    return {"validate", "weak-coupling and free-flight checks for one species and pump", p, run};
}

}  // namespace

std::vector<Command> make_commands() {
    return {table1(), forcescan(), diffscan(), confocal(), cool(), budget(), validate()};
}

}  // namespace cavitycool::cli
