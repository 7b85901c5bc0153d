#pragma once

// Adaptive Gauss-Kronrod (7/15) quadrature for vector-valued integrands on
// a fixed initial panelisation. Each panel is bisected until its error
// estimate falls below its share of the absolute tolerance.

#include <array>
#include <cmath>
#include <cstddef>
#include <vector>

namespace cavitycool::quad {

template <std::size_t N>
using Vec = std::array<double, N>;

struct Options {
    double abs_tol = 1e-12;
    int max_depth = 30;
    std::size_t max_intervals = 1u << 20;
};

template <std::size_t N>
struct Result {
    Vec<N> value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = true;
};

namespace detail {

inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the nodes xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::size_t N, class F>
std::pair<Vec<N>, double> gk15(F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    Vec<N> k{}, g{};
    auto add = [](Vec<N>& acc, const Vec<N>& v, double w) {
        for (std::size_t i = 0; i < N; ++i) acc[i] += w * v[i];
    };
    const Vec<N> fc = f(c);
    add(k, fc, wgk[7]);
    add(g, fc, wg[3]);
    for (int j = 0; j < 7; ++j) {
        const Vec<N> f1 = f(c - h * xgk[j]);
        const Vec<N> f2 = f(c + h * xgk[j]);
        add(k, f1, wgk[j]);
        add(k, f2, wgk[j]);
        if (j % 2 == 1) {
            add(g, f1, wg[j / 2]);
            add(g, f2, wg[j / 2]);
        }
    }
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        k[i] *= h;
        g[i] *= h;
        err = std::max(err, std::abs(k[i] - g[i]));
    }
    return {k, err};
}

}  // namespace detail

/// Integrate f over [a, b] starting from panels no wider than panel_width.
template <std::size_t N, class F>
Result<N> integrate(F&& f, double a, double b, double panel_width, const Options& opt) {
    Result<N> res;
    const double length = b - a;
    if (!(length > 0.0)) return res;
    const auto panels = static_cast<std::size_t>(std::ceil(length / panel_width));
    const double w0 = length / static_cast<double>(panels);

    struct Item {
        double a, b;
        int depth;
    };
    std::vector<Item> stack;
    std::size_t intervals = 0;
    for (std::size_t p = panels; p-- > 0;) {
        const double pa = a + w0 * static_cast<double>(p);
        const double pb = p + 1 == panels ? b : pa + w0;
        stack.push_back({pa, pb, 0});
    }
    while (!stack.empty()) {
        const Item it = stack.back();
        stack.pop_back();
        auto [v, err] = detail::gk15<N>(f, it.a, it.b);
        res.evaluations += 15;
        ++intervals;
        const double share = opt.abs_tol * (it.b - it.a) / length;
        const bool can_split = it.depth < opt.max_depth && intervals + stack.size() < opt.max_intervals;
        if (err > share && can_split) {
            const double mid = 0.5 * (it.a + it.b);
            stack.push_back({mid, it.b, it.depth + 1});
            stack.push_back({it.a, mid, it.depth + 1});
            continue;
        }
        if (err > share) res.converged = false;
        for (std::size_t i = 0; i < N; ++i) res.value[i] += v[i];
        res.error += err;
    }
    return res;
}

}  // namespace cavitycool::quad
