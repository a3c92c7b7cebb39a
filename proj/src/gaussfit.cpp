#include "fadeber/gaussfit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fadeber {

double gaussian_model(double a, double b, double c, double x) {
    const double u = (x - b) / c;
    return a * std::exp(-u * u);
}

double gaussian_eval(const GaussianFit& fit, SnrValue x) {
    if (x.domain != fit.domain)
        throw std::invalid_argument("gaussian_eval: SNR domain does not match fit domain");
    return gaussian_model(fit.a, fit.b, fit.c, x.magnitude);
}

namespace {

double sse_of(const BerCurve& curve, double a, double b, double c) {
    double sse = 0.0;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        const double r = curve.ber[i] - gaussian_model(a, b, c, curve.snr[i]);
        sse += r * r;
    }
    return sse;
}

// Solves (JtJ + lambda * diag(JtJ)) delta = Jtr for the 3-vector delta.
// Returns false on a singular system.
bool solve_damped(const std::array<double, 6>& jtj_packed,
                  const std::array<double, 3>& jtr, double lambda,
                  std::array<double, 3>& delta) {
    // Packed upper triangle: [00 01 02 11 12 22]
    double m[3][3] = {
        {jtj_packed[0] * (1.0 + lambda), jtj_packed[1], jtj_packed[2]},
        {jtj_packed[1], jtj_packed[3] * (1.0 + lambda), jtj_packed[4]},
        {jtj_packed[2], jtj_packed[4], jtj_packed[5] * (1.0 + lambda)}};
    double rhs[3] = {jtr[0], jtr[1], jtr[2]};
    // Gaussian elimination with partial pivoting.
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[perm[r]][col]) > std::abs(m[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = m[perm[col]][col];
        if (p == 0.0 || !std::isfinite(p)) return false;
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[perm[r]][col] / p;
            for (int k = col; k < 3; ++k) m[perm[r]][k] -= f * m[perm[col]][k];
            rhs[perm[r]] -= f * rhs[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double v = rhs[perm[col]];
        for (int k = col + 1; k < 3; ++k) v -= m[perm[col]][k] * delta[k];
        if (m[perm[col]][col] == 0.0) return false;
        delta[col] = v / m[perm[col]][col];
    }
    return std::isfinite(delta[0]) && std::isfinite(delta[1]) && std::isfinite(delta[2]);
}

}  // namespace

std::pair<GaussianFit, FitReport> fit_gaussian(const BerCurve& curve,
                                               std::optional<GaussianFit> init,
                                               FitOptions opts) {
    const std::size_t n = curve.size();
    if (n < 4) throw std::invalid_argument("fit_gaussian: need at least 4 points");

    double a, b, c;
    if (init) {
        a = init->a;
        b = init->b;
        c = init->c;
    } else {
        const auto peak = std::max_element(curve.ber.begin(), curve.ber.end());
        a = *peak;
        b = curve.snr[std::size_t(peak - curve.ber.begin())];
        c = 0.5 * (curve.snr.back() - curve.snr.front());
    }
    if (c == 0.0) c = 1.0;

    double lambda = 1e-3;
    double sse = sse_of(curve, a, b, c);
    int iterations = 0;
    bool converged = false;

    for (; iterations < opts.max_iter; ++iterations) {
        std::array<double, 6> jtj{};
        std::array<double, 3> jtr{};
        for (std::size_t i = 0; i < n; ++i) {
            const double u = (curve.snr[i] - b) / c;
            const double e = std::exp(-u * u);
            const double ja = e;
            const double jb = 2.0 * a * u * e / c;
            const double jc = 2.0 * a * u * u * e / c;
            const double r = curve.ber[i] - a * e;
            jtj[0] += ja * ja;
            jtj[1] += ja * jb;
            jtj[2] += ja * jc;
            jtj[3] += jb * jb;
            jtj[4] += jb * jc;
            jtj[5] += jc * jc;
            jtr[0] += ja * r;
            jtr[1] += jb * r;
            jtr[2] += jc * r;
        }

        // Try increasingly damped steps until the SSE drops.
        bool stepped = false;
        for (int attempt = 0; attempt < 40; ++attempt) {
            std::array<double, 3> delta{};
            if (!solve_damped(jtj, jtr, lambda, delta)) {
                lambda *= 10.0;
                continue;
            }
            const double a2 = a + delta[0];
            const double b2 = b + delta[1];
            const double c2 = c + delta[2];
            const double sse2 = (c2 == 0.0) ? std::numeric_limits<double>::infinity()
                                            : sse_of(curve, a2, b2, c2);
            if (sse2 <= sse) {
                const double drop = sse - sse2;
                a = a2;
                b = b2;
                c = c2;
                lambda = std::max(lambda / 10.0, 1e-15);
                stepped = true;
                if (drop <= opts.sse_rel_tol * std::max(sse, 1e-300)) {
                    sse = sse2;
                    converged = true;
                }
                sse = sse2;
                break;
            }
            lambda *= 10.0;
        }
        if (converged) {
            ++iterations;
            break;
        }
        if (!stepped) {
            // No descent direction left at any damping: treat as converged.
            converged = true;
            ++iterations;
            break;
        }
    }

    GaussianFit fit{a, b, std::abs(c), curve.domain};
    FitReport report = goodness_of_fit(curve, fit);
    report.iterations = iterations;
    report.converged = converged;
    return {fit, report};
}

FitReport goodness_of_fit(const BerCurve& curve, const GaussianFit& fit) {
    const std::size_t n = curve.size();
    constexpr std::size_t p = 3;
    if (n <= p) throw std::invalid_argument("goodness_of_fit: need n > 3 points");
    if (curve.domain != fit.domain)
        throw std::invalid_argument("goodness_of_fit: curve/fit domain mismatch");

    const double mean =
        std::accumulate(curve.ber.begin(), curve.ber.end(), 0.0) / double(n);
    double sse = 0.0;
    double sst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = curve.ber[i] - gaussian_model(fit.a, fit.b, fit.c, curve.snr[i]);
        const double d = curve.ber[i] - mean;
        sse += r * r;
        sst += d * d;
    }
    if (sst == 0.0)
        throw std::invalid_argument("goodness_of_fit: constant data (SST = 0)");

    FitReport rep;
    rep.sse = sse;
    rep.r2 = 1.0 - sse / sst;
    rep.adj_r2 = 1.0 - (sse / double(n - p)) / (sst / double(n - 1));
    rep.rmse = std::sqrt(sse / double(n - p));
    rep.iterations = 0;
    rep.converged = true;
    return rep;
}

}  // namespace fadeber
