#pragma once

// Small seeded generators for property tests.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

namespace testgen {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
    // log-uniform over [lo, hi], both positive
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
    bool coin() { return integer(0, 1) == 1; }
    std::complex<double> complex_in_box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

// Runs `body(gen)` for `cases` draws from independent seeds so a failure
// names a reproducible case.
template <class F>
void for_all(int cases, std::uint64_t seed, F&& body) {
    for (int i = 0; i < cases; ++i) {
        Gen g(seed * 1000003ULL + static_cast<std::uint64_t>(i));
        body(g);
    }
}

}  // namespace testgen
