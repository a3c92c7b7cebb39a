// Test-only oracles, independent of the library's quadrature and special
// function paths.
#pragma once

#include <cmath>
#include <cstdint>
#include <functional>

namespace oracle {

// Composite Simpson rule; error O(h^4), so n in the thousands reaches
// near machine precision for smooth integrands.
inline double simpson(const std::function<double(double)>& f, double lo,
                      double hi, int n) {
    if (n % 2) ++n;
    const double h = (hi - lo) / n;
    double sum = f(lo) + f(hi);
    for (int i = 1; i < n; ++i) sum += f(lo + i * h) * (i % 2 ? 4.0 : 2.0);
    return sum * h / 3.0;
}

// erf via Simpson on the defining integral (2/sqrt(pi)) int_0^x e^{-u^2} du.
inline double erf_quadrature(double x, int n = 4000) {
    const double sqrt_pi = 1.7724538509055160273;
    const double sign = x < 0 ? -1.0 : 1.0;
    const double ax = std::abs(x);
    if (ax == 0.0) return 0.0;
    return sign * (2.0 / sqrt_pi) *
           simpson([](double u) { return std::exp(-u * u); }, 0.0, ax, n);
}

// Direct transcription of the fading closed form in its raw printed shape;
// overflows for small gamma, kept as a cross-check only.
inline double fading_closed_form_raw(double a, double b, double c, double gamma,
                                     const std::function<double(double)>& erf_fn) {
    const double sqrt_pi = 1.7724538509055160273;
    const double t = 2.0 * b / (c * c) - 1.0 / gamma;
    const double expo = -b * b / (c * c) + t * t * c * c / 4.0;
    return a * c * sqrt_pi / (2.0 * gamma) * std::exp(expo) *
           (1.0 + erf_fn(b / c - c / (2.0 * gamma)));
}

// Small deterministic generator for property tests.
struct SplitMix64 {
    std::uint64_t state;
    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
    double uniform() { return double(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

}  // namespace oracle
