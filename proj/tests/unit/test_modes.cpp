#include "doctest.h"

#include <nlohmann/json.hpp>

#include "cavitycool/errors.hpp"
#include "cavitycool/modes.hpp"
#include "gen.hpp"

using namespace cavitycool;
using doctest::Approx;
using cd = std::complex<double>;

namespace {

const double pi = M_PI;

// relative agreement with an absolute floor set by the size of the function
bool close(cd a, cd b, double rel, double floor) { return std::abs(a - b) <= rel * std::max(std::abs(b), floor); }

ModeGeometry random_mode(testgen::Gen& g) {
    switch (g.integer(0, 2)) {
        case 0: return PlaneStanding{g.uniform(0.5, 2.0), g.coin() ? Parity::cos : Parity::sin};
        case 1: {
            const Axis axes[3] = {Axis::x, Axis::y, Axis::z};
            return GaussianRunning{g.uniform(0.5, 2.0), axes[g.integer(0, 2)], g.uniform(2.0, 20.0),
                                   g.coin() ? 1 : -1};
        }
        default:
            return LaguerreGaussianStanding{g.uniform(0.5, 2.0), g.integer(1, 100), g.integer(0, 4),
                                            2 * g.integer(0, 3), g.coin() ? Parity::cos : Parity::sin,
                                            g.uniform(2.0, 20.0)};
    }
}

}  // namespace

TEST_CASE("plane standing wave values") {
    const ModeGeometry c = PlaneStanding{2.0, Parity::cos};
    const auto s = evaluate(c, {0, 0, 0});
    CHECK(s.value == cd(1.0));
    CHECK(s.dx == cd(0.0));
    CHECK(s.dxx == cd(-4.0));
    // d|f|^2/dx = 2 Re(f* f') = -k at kx = pi/4
    const auto q = evaluate(PlaneStanding{1.0, Parity::cos}, {pi / 4, 0, 0});
    CHECK(2.0 * std::real(std::conj(q.value) * q.dx) == Approx(-1.0));
    CHECK(std::abs(value(PlaneStanding{1.0, Parity::sin}, {pi / 2, 0, 0})) == Approx(1.0));
}

TEST_CASE("Helmholtz residual of exact forms") {
    const auto pts = halton_points(200, {-5, -5, -5}, {5, 5, 5});
    CHECK(helmholtz_residual(PlaneStanding{3.0, Parity::cos}, pts) < 1e-12 * 9.0);
    CHECK(helmholtz_residual(PlaneStanding{3.0, Parity::sin}, pts) < 1e-12 * 9.0);
    CHECK(helmholtz_residual(GaussianRunning{3.0, Axis::y}, pts) < 1e-12 * 9.0);

    // paraxial LG modes miss by about (lambda/w)^2
    const double k = 2.0 * pi, w = 20.0;
    const ModeGeometry lg = LaguerreGaussianStanding{k, 10, 1, 0, Parity::cos, w};
    const auto near = halton_points(200, {-1, -w, -w}, {1, w, w});
    const double rel = helmholtz_residual(lg, near) / (k * k);
    const double scale = std::pow(1.0 / w, 2);  // lambda = 1
    CHECK(rel > 0.01 * scale);
    CHECK(rel < 10.0 * scale);
}

TEST_CASE("running wave across its waist changes slowly in x") {
    const double w = 1000.0;
    const ModeGeometry g = GaussianRunning{1.0, Axis::y, w};
    for (double dx : {0.1, 1.0, 10.0}) {
        const double change = std::abs(value(g, {dx, 0.3, 0.0}) - value(g, {0.0, 0.3, 0.0}));
        CHECK(change <= 2.0 * std::pow(dx / w, 2));
    }
}

TEST_CASE("analytic derivatives match central differences") {
    testgen::for_all(1000, 11, [](testgen::Gen& g) {
        const auto m = random_mode(g);
        const Vec3 r{g.uniform(-10, 10), g.uniform(-10, 10), g.uniform(-10, 10)};
        const double h = 1e-6 / wavenumber(m);
        const double H = 1e-3 / wavenumber(m);  // second differences need a larger step
        const auto s = evaluate(m, r);
        const double scale = std::max(std::abs(s.value), 1e-3);
        const cd fd1 = (value(m, {r.x + h, r.y, r.z}) - value(m, {r.x - h, r.y, r.z})) / (2 * h);
        const cd fd2 =
            (value(m, {r.x + H, r.y, r.z}) - 2.0 * s.value + value(m, {r.x - H, r.y, r.z})) / (H * H);
        CHECK(close(fd1, s.dx, 1e-8, scale * wavenumber(m)));
        CHECK(close(fd2, s.dxx, 1e-6, scale * wavenumber(m) * wavenumber(m)));
        CHECK(std::abs(s.value) <= 1.0 + 1e-12);
    });
}

TEST_CASE("Laplacian matches finite differences") {
    testgen::for_all(200, 12, [](testgen::Gen& g) {
        const auto m = random_mode(g);
        const Vec3 r{g.uniform(-5, 5), g.uniform(-5, 5), g.uniform(-5, 5)};
        const double H = 1e-3;
        const cd f0 = value(m, r);
        cd lap = 0.0;
        for (int a = 0; a < 3; ++a) {
            Vec3 p = r, q = r;
            (a == 0 ? p.x : a == 1 ? p.y : p.z) += H;
            (a == 0 ? q.x : a == 1 ? q.y : q.z) -= H;
            lap += (value(m, p) - 2.0 * f0 + value(m, q)) / (H * H);
        }
        const double k = wavenumber(m);
        CHECK(close(lap, evaluate(m, r).laplacian, 1e-4, std::max(std::abs(f0), 1e-2) * k * k));
    });
}

TEST_CASE("LG transverse profile") {
    // fundamental is a plain Gaussian with unit peak
    CHECK(std::abs(lg_transverse(0, 0, 2.0, 0, 0)) == Approx(1.0));
    CHECK(std::abs(lg_transverse(0, 0, 2.0, 2.0, 0)) == Approx(std::exp(-1.0)));
    // equal power: int |u|^2 dy dz = pi w^2 / 2 for every (m, l)
    const double w = 1.0, L = 6.0;
    const int n = 400;
    const double h = 2 * L / n;
    for (auto [m, l] : {std::pair{0, 0}, {1, 0}, {0, 2}, {2, 2}, {3, 4}}) {
        double sum = 0.0;
        for (int i = 0; i <= n; ++i) {
            for (int j = 0; j <= n; ++j) {
                const double wy = (i == 0 || i == n) ? 0.5 : 1.0, wz = (j == 0 || j == n) ? 0.5 : 1.0;
                sum += wy * wz * std::norm(lg_transverse(m, l, w, -L + i * h, -L + j * h));
            }
        }
        CHECK(sum * h * h == Approx(pi * w * w / 2.0).epsilon(1e-6));
    }
}

TEST_CASE("confocal enumeration") {
    ConfocalSetup s;
    CHECK(s.wavelength() == Approx(1e-6).epsilon(1e-4));
    CHECK(s.waist() == Approx(std::sqrt(s.wavelength() * 10e-3 / (2 * pi))));
    CHECK(confocal_degenerate_set(s, 8).size() == 15);
    CHECK(confocal_degenerate_set(s, 18).size() == 55);
    CHECK(confocal_degenerate_set(s, 54).size() == 406);
    CHECK(confocal_degenerate_set(s).size() == 1);  // a = 1 keeps the fundamental only
    s.waist_ratio_limit = 0.5;
    CHECK(confocal_degenerate_set(s).empty());

    for (int J = 0; J <= 50; ++J) {
        const auto modes = confocal_degenerate_set(ConfocalSetup{}, 2 * J);
        CHECK(modes.size() == static_cast<std::size_t>((J + 1) * (J + 2) / 2));
    }
    const ConfocalSetup base;
    for (const auto& m : confocal_degenerate_set(base, 54)) {
        CHECK(m.l % 2 == 0);
        CHECK(confocal_wavenumber(base, m.n, m.m, m.l) == Approx(base.wavenumber()).epsilon(1e-15));
        CHECK((m.parity == Parity::cos) == (m.n % 2 == 0));
    }
    ConfocalSetup tiny;
    tiny.n0 = 10;
    CHECK_THROWS_AS((void)confocal_degenerate_set(tiny, 8), DomainError);

    // waist-limited cap: a^2 >= 2m + l + 1
    ConfocalSetup wide;
    wide.waist_ratio_limit = std::sqrt(55.0);
    const auto modes = confocal_degenerate_set(wide);
    CHECK(modes.size() == 406);
    for (const auto& m : modes) CHECK(effective_waist(m.m, m.l, 1.0) <= std::sqrt(55.0) + 1e-12);
}

TEST_CASE("effective waist") {
    CHECK(effective_waist(0, 0, 2.0) == 2.0);
    CHECK(effective_waist(1, 2, 1.0) == Approx(std::sqrt(5.0)));
    CHECK(effective_waist(27, 0, 1.0) == Approx(7.416).epsilon(1e-3));
    CHECK_THROWS_AS((void)effective_waist(-1, 0, 1.0), DomainError);
}

TEST_CASE("mode export") {
    const ConfocalSetup s;
    const auto j = nlohmann::json::parse(modes_to_json(confocal_degenerate_set(s, 2), s.waist()));
    REQUIRE(j.size() == 3);
    CHECK(j[0]["n"] == s.n0);
    CHECK(j[1]["effective_waist"].get<double>() == Approx(s.waist() * std::sqrt(3.0)));
    CHECK(j[2]["l"] == 2);
}

TEST_CASE("validation") {
    CHECK_THROWS_AS(validate(LaguerreGaussianStanding{1.0, 0, 0, 0}), DomainError);
    CHECK_THROWS_AS(validate(GaussianRunning{1.0, Axis::y, 1.0, 2}), DomainError);
    CHECK_THROWS_AS((ModeChannel{PlaneStanding{}, 0.0, 0.0, 0.0}.validate()), DomainError);
    CHECK(ModeChannel{PlaneStanding{}, 2.0, 3.0, 0.1}.nu() == cd(2.0, 3.0));
    const auto r = std::get<GaussianRunning>(rescaled(GaussianRunning{2.0, Axis::y, 4.0}, 0.5));
    CHECK(r.k == 1.0);
    CHECK(r.waist == 8.0);
}
