#include "doctest.h"

#include <algorithm>
#include <vector>

#include "cavitycool/coefficients.hpp"
#include "cavitycool/errors.hpp"
#include "gen.hpp"

using namespace cavitycool;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

const double opt_delta = 1.0 / std::sqrt(3.0);

NParticleSystem one_mode(double U, cd alpha, double Delta, double mass) {
    const ModeChannel pump{PlaneStanding{1.0, Parity::cos}, 1.0, Delta, U};
    return as_n_particle_system(pump, alpha, {}, mass);
}

std::vector<PhasePoint> random_cloud(testgen::Gen& g, int n, double mass) {
    std::vector<PhasePoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back({g.uniform(0, 2 * M_PI), mass * g.uniform(-2, 2)});
    return pts;
}

}  // namespace

TEST_CASE("one particle reproduces the multimode result") {
    testgen::for_all(100, 41, [](testgen::Gen& g) {
        const double mass = g.uniform(50, 1000);
        const ModeChannel pump{PlaneStanding{1.0, g.coin() ? Parity::cos : Parity::sin}, g.uniform(0.5, 1.5),
                               g.uniform(-1, 3), g.uniform(-0.1, 0.1)};
        std::vector<ModeChannel> empty;
        for (int i = 0; i < g.integer(0, 3); ++i) {
            empty.push_back({PlaneStanding{g.uniform(0.5, 1.5), g.coin() ? Parity::cos : Parity::sin},
                             g.uniform(0.5, 1.5), g.uniform(-1, 3), g.uniform(-0.1, 0.1)});
        }
        const cd alpha = g.complex_in_box(1.0);
        const PhasePoint pt{g.uniform(0, 6), mass * g.uniform(-2, 2)};
        const auto a = dissipative_multimode(pt, mass, pump, alpha, empty);
        const auto b = n_particle_coefficients(std::span(&pt, 1), as_n_particle_system(pump, alpha, empty, mass));
        CHECK(b.force1[0] == a.force1);
        CHECK(b.force2[0] == a.force2);
        CHECK(b.D(1, 1) == a.D_pp);
        CHECK(b.D(0, 1) == a.D_xp);
        CHECK(b.D(1, 0) == a.D_xp);
        CHECK(b.D(0, 0) == 0.0);
        CHECK(b.g_x[0] == pt.p / mass);
    });
}

TEST_CASE("cos-mode oracle for several particles") {
    // written out with the closed-form memory and d|cos x|^2/dx = -sin 2x
    testgen::for_all(50, 42, [](testgen::Gen& g) {
        const double mass = 500.0, U = g.uniform(-0.1, 0.1), Delta = g.uniform(-2, 2);
        const cd alpha = g.complex_in_box(1.5);
        const auto pts = random_cloud(g, g.integer(2, 5), mass);
        const auto c = n_particle_coefficients(pts, one_mode(U, alpha, Delta, mass));
        const cd w = U * U * std::norm(alpha);
        const std::size_t N = pts.size();
        std::vector<MemoryResult> G;
        cd sum = 0.0;
        for (const auto& p : pts) {
            G.push_back(memory_integral_fp_closed(p.x, p.p, mass, 1.0, Delta));
            sum += G.back().G;
        }
        for (std::size_t k = 0; k < N; ++k) {
            const double d1 = -std::sin(2 * pts[k].x), d2 = -2 * std::cos(2 * pts[k].x);
            const double f1 = 2 * std::real(cd(0, 1) * w * d1 * sum);
            const double f2 = -std::real(w * d2 * G[k].dG_dp);
            CHECK(c.force1[k] == Approx(f1).epsilon(1e-12).scale(1e-12));
            CHECK(c.force2[k] == Approx(f2).epsilon(1e-12).scale(1e-14));
            for (std::size_t j = 0; j < N; ++j) {
                const double dj = -std::sin(2 * pts[j].x);
                const double dpp = std::real(w * d1 * G[j].dG_dx) + std::real(w * dj * G[k].dG_dx);
                CHECK(c.D(2 * k + 1, 2 * j + 1) == Approx(dpp).epsilon(1e-12).scale(1e-12));
                CHECK(c.D(2 * k + 1, 2 * j) == Approx(-std::real(w * d1 * G[j].dG_dp)).epsilon(1e-12).scale(1e-14));
            }
        }
    });
}

TEST_CASE("coincident particles double the collective force") {
    const auto sys = one_mode(0.1, 1.0, opt_delta, 500.0);
    testgen::for_all(50, 43, [&](testgen::Gen& g) {
        const PhasePoint one{g.uniform(0, 6), g.uniform(-500, 500)};
        const PhasePoint two[2] = {one, one};
        const auto c1 = n_particle_coefficients(std::span(&one, 1), sys);
        const auto c2 = n_particle_coefficients(two, sys);
        CHECK(c2.force1[0] == 2.0 * c1.force1[0]);
        CHECK(c2.force1[1] == 2.0 * c1.force1[0]);
        // the self term is unchanged
        CHECK(c2.force2[0] == c1.force2[0]);
    });
}

TEST_CASE("diffusion matrix symmetry and particle relabelling") {
    testgen::for_all(50, 44, [](testgen::Gen& g) {
        const double mass = 300.0;
        const ModeChannel pump{PlaneStanding{1.0, Parity::cos}, 1.0, g.uniform(0, 2), 0.1};
        const std::vector<ModeChannel> empty = {{PlaneStanding{1.1, Parity::sin}, 0.7, g.uniform(0, 2), 0.05}};
        const auto sys = as_n_particle_system(pump, g.complex_in_box(1.0), empty, mass);
        auto pts = random_cloud(g, 3, mass);
        const auto a = n_particle_coefficients(pts, sys);
        for (std::size_t i = 0; i < 6; ++i) {
            for (std::size_t j = 0; j < 6; ++j) CHECK(a.D(i, j) == a.D(j, i));
        }
        std::swap(pts[0], pts[2]);
        const auto b = n_particle_coefficients(pts, sys);
        const std::size_t perm[3] = {2, 1, 0};
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(b.force1[perm[k]] == Approx(a.force1[k]).epsilon(1e-13).scale(1e-15));
            CHECK(b.force2[perm[k]] == Approx(a.force2[k]).epsilon(1e-13).scale(1e-15));
            for (std::size_t j = 0; j < 3; ++j) {
                CHECK(b.D(2 * perm[k] + 1, 2 * perm[j] + 1) == Approx(a.D(2 * k + 1, 2 * j + 1)).epsilon(1e-13).scale(1e-15));
            }
        }
    });
}

TEST_CASE("coupling matrix from channel couplings") {
    const ModeChannel pump{PlaneStanding{}, 1.0, 0.5, 0.2};
    const std::vector<ModeChannel> empty = {{PlaneStanding{}, 1.0, 0.5, 0.1}, {PlaneStanding{}, 1.0, 0.5, -0.4}};
    const auto sys = as_n_particle_system(pump, cd(0.5, 0.5), empty, 10.0);
    REQUIRE(sys.mode_count() == 3);
    CHECK(sys.coupling(0, 0) == 0.2);
    CHECK(sys.coupling(0, 2) == -0.4);
    CHECK(sys.coupling(1, 2) == Approx(0.1 * -0.4 / 0.2));
    CHECK(sys.alpha[0] == cd(0.5, 0.5));
    CHECK(sys.alpha[1] == cd(0.0));
}

TEST_CASE("validation") {
    auto sys = one_mode(0.1, 1.0, 0.5, 10.0);
    const PhasePoint pt{};
    CHECK_THROWS_AS((void)n_particle_coefficients(std::span<const PhasePoint>(), sys), DomainError);
    auto bad = sys;
    bad.mass = 0.0;
    CHECK_THROWS_AS((void)n_particle_coefficients(std::span(&pt, 1), bad), DomainError);
    bad = sys;
    bad.alpha.push_back(0.0);
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = as_n_particle_system(ModeChannel{PlaneStanding{}, 1.0, 0.5, 0.1}, 1.0,
                               std::vector<ModeChannel>{{PlaneStanding{}, 1.0, 0.5, 0.1}}, 10.0);
    bad.U[1] = 0.3;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    NParticleSystem empty;
    CHECK_THROWS_AS(empty.validate(), DomainError);
}
