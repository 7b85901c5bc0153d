#include "cavitycool/confocal.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "cavitycool/errors.hpp"

namespace cavitycool {

namespace {

struct Scaled {
    double w0;  // fundamental waist in 1/k
    double H;   // transverse half-width in 1/k
};

Scaled scaled(const ConfocalFrictionConfig& cfg) {
    const double w0 = cfg.setup.waist() * cfg.setup.wavenumber();
    return {w0, cfg.average_halfwidth * w0};
}

int max_order_of(const std::vector<LaguerreGaussianStanding>& modes) {
    int j = 0;
    for (const auto& m : modes) j = std::max(j, 2 * m.m + m.l);
    return j;
}

// Quadrant trapezoid over [-H, H]^2 with `intervals` per axis (even). Both
// the pump intensity and |u_{m,l}|^2 are even in y and z.
std::map<std::pair<int, int>, double> overlaps_by_index(const Scaled& s, int max_order, int intervals) {
    const int half = intervals / 2;
    const double h = 2.0 * s.H / intervals;
    const double w2 = s.w0 * s.w0;

    std::vector<std::vector<double>> lognorm;  // per even l, per m
    for (int l = 0; l <= max_order; l += 2) {
        std::vector<double> v;
        for (int m = 0; 2 * m + l <= max_order; ++m) v.push_back(std::lgamma(m + 1.0) - std::lgamma(m + l + 1.0));
        lognorm.push_back(std::move(v));
    }
    std::vector<std::vector<double>> acc(lognorm.size());
    for (std::size_t i = 0; i < lognorm.size(); ++i) acc[i].assign(lognorm[i].size(), 0.0);

    // A quadrant point stands for its mirror images: 1 on the axis, 2 inside,
    // and 2 x 1/2 at the trapezoid end points.
    auto weight = [&](int i) { return (i == 0 || i == half) ? 1.0 : 2.0; };
    for (int iy = 0; iy <= half; ++iy) {
        const double y = iy * h;
        for (int iz = 0; iz <= half; ++iz) {
            const double z = iz * h;
            const double wt = weight(iy) * weight(iz);
            const double pump = std::exp(-2.0 * z * z / w2);
            const double t = 2.0 * (y * y + z * z) / w2;
            const double logt = t > 0.0 ? std::log(t) : -HUGE_VAL;
            for (std::size_t li = 0; li < lognorm.size(); ++li) {
                const int l = static_cast<int>(2 * li);
                if (l > 0 && t == 0.0) continue;
                const double base = (l > 0 ? l * logt : 0.0) - t;
                double Lm1 = 0.0, L = 1.0;
                for (std::size_t m = 0; m < lognorm[li].size(); ++m) {
                    if (m == 1) {
                        Lm1 = L;
                        L = 1.0 + l - t;
                    } else if (m > 1) {
                        const double mm = static_cast<double>(m - 1);
                        const double next = ((2.0 * mm + 1.0 + l - t) * L - (mm + l) * Lm1) / (mm + 1.0);
                        Lm1 = L;
                        L = next;
                    }
                    acc[li][m] += wt * pump * std::exp(base + lognorm[li][m]) * L * L;
                }
            }
        }
    }
    const double area = (2.0 * s.H) * (2.0 * s.H);
    std::map<std::pair<int, int>, double> out;
    for (std::size_t li = 0; li < lognorm.size(); ++li) {
        for (std::size_t m = 0; m < lognorm[li].size(); ++m) {
            out[{static_cast<int>(m), static_cast<int>(2 * li)}] = acc[li][m] * h * h / area;
        }
    }
    return out;
}

std::vector<double> pick(const std::map<std::pair<int, int>, double>& table,
                         const std::vector<LaguerreGaussianStanding>& modes) {
    std::vector<double> v;
    v.reserve(modes.size());
    for (const auto& m : modes) v.push_back(table.at({m.m, m.l}));
    return v;
}

}  // namespace

TransverseOverlaps transverse_overlaps(const ConfocalFrictionConfig& cfg,
                                       const std::vector<LaguerreGaussianStanding>& modes) {
    if (cfg.min_points < 2 || cfg.max_points < cfg.min_points) throw DomainError("bad transverse grid limits");
    for (const auto& m : modes) {
        if (m.l % 2 != 0) throw DomainError("confocal friction expects the even-l degenerate set");
    }
    const Scaled s = scaled(cfg);
    const int J = max_order_of(modes);
    TransverseOverlaps out;
    int n = cfg.min_points + (cfg.min_points % 2);
    out.overlap = pick(overlaps_by_index(s, J, n), modes);
    out.points = n;
    while (2 * n <= cfg.max_points) {
        n *= 2;
        auto next = pick(overlaps_by_index(s, J, n), modes);
        double diff = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < next.size(); ++i) {
            diff = std::max(diff, std::abs(next[i] - out.overlap[i]));
            scale = std::max(scale, std::abs(next[i]));
        }
        out.overlap = std::move(next);
        out.points = n;
        out.last_change = scale > 0.0 ? diff / scale : 0.0;
        if (out.last_change < cfg.rel_tol) {
            out.converged = true;
            break;
        }
    }
    return out;
}

std::vector<double> transverse_overlaps_direct(const ConfocalFrictionConfig& cfg,
                                               const std::vector<LaguerreGaussianStanding>& modes, int points) {
    const Scaled s = scaled(cfg);
    const GaussianRunning pump{1.0, Axis::y, s.w0, +1};
    const double h = 2.0 * s.H / points;
    std::vector<double> out;
    for (const auto& mode : modes) {
        double acc = 0.0;
        for (int iy = 0; iy <= points; ++iy) {
            const double y = -s.H + iy * h;
            const double wy = (iy == 0 || iy == points) ? 0.5 : 1.0;
            for (int iz = 0; iz <= points; ++iz) {
                const double z = -s.H + iz * h;
                const double wz = (iz == 0 || iz == points) ? 0.5 : 1.0;
                const double f0 = std::norm(value(pump, {0.0, y, z}));
                const double u = std::norm(lg_transverse(mode.m, mode.l, s.w0, y, z));
                acc += wy * wz * f0 * u;
            }
        }
        out.push_back(acc * h * h / (4.0 * s.H * s.H));
    }
    return out;
}

ConfocalProfile confocal_friction_profile(const ConfocalFrictionConfig& cfg, int max_order,
                                          const std::vector<double>& kx) {
    const auto modes = confocal_degenerate_set(cfg.setup, max_order);
    ConfocalProfile out;
    out.kx = kx;
    out.modes = modes.size();
    out.overlaps = transverse_overlaps(cfg, modes);

    const Scaled s = scaled(cfg);
    const double mass = 0.5 / cfg.omega_r;
    const double D2 = cfg.Delta * cfg.Delta;
    const double pref = -4.0 * cfg.coupling * cfg.coupling / (mass * (1.0 + D2) * (1.0 + D2));
    const double second = cfg.include_second_order ? (1.0 - D2) / (1.0 + D2) / (2.0 * mass) : 0.0;

    double cos_first = 0.0, sin_first = 0.0;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        (modes[i].parity == Parity::cos ? cos_first : sin_first) += out.overlaps.overlap[i];
    }
    for (double x : kx) {
        const double env = std::exp(-2.0 * x * x / (s.w0 * s.w0));
        const double s2 = std::sin(x) * std::sin(x), c2 = std::cos(x) * std::cos(x);
        // cos modes: |d/dx|^2 ~ sin^2, |d^2/dx^2|^2 ~ cos^2; sin modes swap
        const double first = pref * cfg.Delta * (cos_first * s2 + sin_first * c2) * env;
        const double sec = pref * second * (cos_first * c2 + sin_first * s2) * env;
        out.beta_first.push_back(first);
        out.beta.push_back(first + sec);
    }
    return out;
}

ConfocalSweep confocal_friction_sweep(const ConfocalFrictionConfig& cfg, const std::vector<int>& max_orders) {
    if (max_orders.empty()) return {};
    if (!std::is_sorted(max_orders.begin(), max_orders.end())) throw DomainError("caps must be ascending");
    const auto all = confocal_degenerate_set(cfg.setup, max_orders.back());
    ConfocalSweep out;
    out.overlaps = transverse_overlaps(cfg, all);

    const int samples = 256;
    std::vector<double> kx(samples);
    for (int i = 0; i < samples; ++i) kx[i] = std::numbers::pi * i / samples;

    const Scaled s = scaled(cfg);
    const double mass = 0.5 / cfg.omega_r;
    const double D2 = cfg.Delta * cfg.Delta;
    const double pref = -4.0 * cfg.coupling * cfg.coupling / (mass * (1.0 + D2) * (1.0 + D2));
    const double second = cfg.include_second_order ? (1.0 - D2) / (1.0 + D2) / (2.0 * mass) : 0.0;

    for (int cap : max_orders) {
        double cos_sum = 0.0, sin_sum = 0.0;
        std::size_t count = 0;
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (2 * all[i].m + all[i].l > cap) continue;
            ++count;
            (all[i].parity == Parity::cos ? cos_sum : sin_sum) += out.overlaps.overlap[i];
        }
        double mean = 0.0;
        for (double x : kx) {
            const double env = std::exp(-2.0 * x * x / (s.w0 * s.w0));
            const double s2 = std::sin(x) * std::sin(x), c2 = std::cos(x) * std::cos(x);
            mean += pref * env *
                    (cfg.Delta * (cos_sum * s2 + sin_sum * c2) + second * (cos_sum * c2 + sin_sum * s2));
        }
        out.max_order.push_back(cap);
        out.modes.push_back(count);
        out.mean_beta.push_back(mean / samples);
    }
    for (double b : out.mean_beta) out.relative.push_back(b / out.mean_beta.front());
    return out;
}

}  // namespace cavitycool
