#include "doctest.h"

#include <vector>

#include "cavitycool/errors.hpp"
#include "cavitycool/psd.hpp"
#include "gen.hpp"

using namespace cavitycool;
using doctest::Approx;

namespace {

std::array<double, 4> BBt(const Factor2& f) {
    const auto& B = f.B;
    return {B[0] * B[0] + B[1] * B[1], B[0] * B[2] + B[1] * B[3], B[2] * B[0] + B[3] * B[1],
            B[2] * B[2] + B[3] * B[3]};
}

}  // namespace

TEST_CASE("diagonal examples") {
    const auto f = psd_factor_2x2(1.0, 0.0, -0.1);
    CHECK(f.altered);
    CHECK(f.lambda_min == Approx(-0.1));
    CHECK(f.clamped_magnitude == Approx(0.1));
    const auto p = BBt(f);
    CHECK(p[0] == Approx(1.0));
    CHECK(p[1] == 0.0);
    CHECK(p[3] == 0.0);

    const auto z = psd_factor_2x2(0.0, 0.0, 0.0);
    CHECK_FALSE(z.altered);
    for (double b : z.B) CHECK(b == 0.0);

    const auto e = psd_factor_2x2(-1.0, 0.0, -2.0);
    for (double b : e.B) CHECK(b == 0.0);
    CHECK(e.clamped_magnitude == Approx(3.0));
}

TEST_CASE("positive matrices are reproduced exactly up to rounding") {
    testgen::for_all(1000, 61, [](testgen::Gen& g) {
        const double a = g.log_uniform(1e-6, 1e3), c = g.log_uniform(1e-6, 1e3);
        const double b = g.uniform(-0.999, 0.999) * std::sqrt(a * c);
        const auto f = psd_factor_2x2(a, b, c);
        const auto p = BBt(f);
        const double s = std::max(a, c);
        CHECK(std::abs(p[0] - a) <= 1e-12 * s);
        CHECK(std::abs(p[1] - b) <= 1e-12 * s);
        CHECK(std::abs(p[2] - b) <= 1e-12 * s);
        CHECK(std::abs(p[3] - c) <= 1e-12 * s);
        CHECK(f.lambda_min >= -1e-12 * s);
    });
}

TEST_CASE("2x2 factor matches the general eigen-clamp") {
    testgen::for_all(1000, 62, [](testgen::Gen& g) {
        const double a = g.uniform(-1, 1), b = g.uniform(-1, 1), c = g.uniform(-1, 1);
        const auto f = psd_factor_2x2(a, b, c);
        const std::vector<double> D = {a, b, b, c};
        const auto r = project_psd(D, 2);
        const auto p = BBt(f);
        for (int i = 0; i < 4; ++i) CHECK(p[i] == Approx(r.matrix[i]).epsilon(1e-10).scale(1.0));
        CHECK(f.altered == r.altered);
        CHECK(f.lambda_min == Approx(r.lambda_min).scale(1.0));
        CHECK(f.clamped_magnitude == Approx(r.clamped_magnitude).scale(1.0));
        // the projection is PSD and the closest one: applying it twice changes nothing
        const auto again = psd_factor_2x2(p[0], p[1], p[3]);
        CHECK(again.lambda_min >= -1e-12);
        const auto q = BBt(again);
        for (int i = 0; i < 4; ++i) CHECK(q[i] == Approx(p[i]).epsilon(1e-10).scale(1.0));
    });
}

TEST_CASE("n x n projection") {
    testgen::for_all(200, 63, [](testgen::Gen& g) {
        const std::size_t n = static_cast<std::size_t>(g.integer(1, 6));
        std::vector<double> D(n * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j <= i; ++j) D[i * n + j] = D[j * n + i] = g.uniform(-1, 1);
        }
        const auto r = project_psd(D, n);
        // PSD: x^T P x >= 0 for random probes
        for (int t = 0; t < 20; ++t) {
            std::vector<double> x(n);
            for (auto& v : x) v = g.uniform(-1, 1);
            double q = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) q += x[i] * r.matrix[i * n + j] * x[j];
            }
            CHECK(q >= -1e-12);
        }
        // trace drops by the clamped magnitude
        double tr0 = 0.0, tr1 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            tr0 += D[i * n + i];
            tr1 += r.matrix[i * n + i];
        }
        CHECK(tr1 - tr0 == Approx(r.clamped_magnitude).scale(1.0));
        CHECK(r.altered == (r.lambda_min < 0.0));
    });
    CHECK_THROWS_AS((void)project_psd(std::vector<double>(3), 2), DomainError);
}
