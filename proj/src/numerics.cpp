#include "fadeber/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace fadeber {

namespace {

constexpr double kSqrtPi = 1.7724538509055160273;
constexpr double kInvSqrt2 = 0.70710678118654752440;

// Maclaurin series of erf, accurate to a few ulp for |x| <= 2.
double erf_series(double x) {
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 80; ++n) {
        term *= -x2 / n;
        const double contrib = term / (2 * n + 1);
        sum += contrib;
        if (std::abs(contrib) < 1e-18 * std::abs(sum)) break;
    }
    return sum * (2.0 / kSqrtPi);
}

// Continued fraction for sqrt(pi) * erfcx(x) =
//   1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),  x >= 2.
// Evaluated by the modified Lentz algorithm.
double erfcx_cf(double x) {
    const double tiny = 1e-300;
    double f = tiny;
    double c = f;
    double d = 0.0;
    for (int n = 1; n < 400; ++n) {
        const double a = (n == 1) ? 1.0 : (n - 1) * 0.5;
        d = x + a * d;
        if (d == 0.0) d = tiny;
        c = x + a / c;
        if (c == 0.0) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-17) break;
    }
    return f / kSqrtPi;
}

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    const double ax = std::abs(x);
    if (ax <= 2.0) return erf_series(x);
    // Tail via the scaled complement; exp(-x^2) underflows harmlessly.
    const double tail = std::exp(-ax * ax) * erfcx_cf(ax);
    return x > 0 ? 1.0 - tail : tail - 1.0;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x < 0.0) return 2.0 - erfc(-x);
    if (x <= 2.0) return 1.0 - erf_series(x);
    return std::exp(-x * x) * erfcx_cf(x);
}

double erfcx(double x) {
    if (std::isnan(x)) return x;
    if (x >= 2.0) return erfcx_cf(x);
    if (x >= 0.0) return std::exp(x * x) * (1.0 - erf_series(x));
    // erfcx(-x) = 2 exp(x^2) - erfcx(x); overflows for x < -26.6.
    return 2.0 * std::exp(x * x) - erfcx(-x);
}

double q_function(double x) { return 0.5 * erfc(x * kInvSqrt2); }

double q_craig(double x, double abs_tol) {
    if (!(x >= 0.0)) throw std::invalid_argument("q_craig: requires x >= 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("q_craig: abs_tol must be > 0");
    if (x == 0.0) return 0.5;
    const double half_x2 = 0.5 * x * x;
    auto integrand = [half_x2](double theta) {
        const double s = std::sin(theta);
        if (s <= 0.0) return 0.0;
        return std::exp(-half_x2 / (s * s));
    };
    const double pi = 3.14159265358979323846;
    auto r = integrate_adaptive(integrand, 0.0, pi / 2.0, abs_tol * pi, 1e-13);
    return r.value / pi;
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights (positive half, node 7 is the origin).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double lo, hi, value, error;
};

Panel gk15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double x = half * kXgk[j];
        const double fsum = f(center - x) + f(center + x);
        kronrod += kWgk[j] * fsum;
        if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double abs_tol, double rel_tol,
                                    std::int64_t max_evaluations) {
    if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi))
        throw std::invalid_argument("integrate_adaptive: need finite lo < hi");
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
        throw std::invalid_argument("integrate_adaptive: tolerances must be > 0");

    const double span = hi - lo;
    std::int64_t evaluations = 0;
    auto evaluate = [&](double a, double b) {
        evaluations += 15;
        return gk15(f, a, b);
    };

    // Worst-panel-first refinement: split the panel with the largest error
    // estimate until the summed error meets max(abs_tol, rel_tol * |I|).
    // Ties break on the left endpoint, keeping the refinement deterministic.
    auto worse = [](const Panel& x, const Panel& y) {
        if (x.error != y.error) return x.error < y.error;
        return x.lo > y.lo;
    };
    std::vector<Panel> heap{evaluate(lo, hi)};

    auto totals = [&] {
        double value = 0.0;
        double error = 0.0;
        for (const Panel& p : heap) {
            value += p.value;
            error += p.error;
        }
        return QuadratureResult{value, error, evaluations};
    };

    for (;;) {
        QuadratureResult current = totals();
        const double tol = std::max(abs_tol, rel_tol * std::abs(current.value));
        if (current.error_estimate <= tol) {
            if (!std::isfinite(current.value))
                throw QuadratureError("integrate_adaptive: non-finite integral", current);
            return current;
        }
        if (evaluations + 30 > max_evaluations)
            throw QuadratureError("integrate_adaptive: evaluation budget exhausted",
                                  current);
        std::pop_heap(heap.begin(), heap.end(), worse);
        const Panel p = heap.back();
        heap.pop_back();
        if ((p.hi - p.lo) < 1e-15 * span)
            throw QuadratureError(
                "integrate_adaptive: interval too small to refine further", current);
        const double mid = 0.5 * (p.lo + p.hi);
        Panel left = evaluate(p.lo, mid);
        Panel right = evaluate(mid, p.hi);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), worse);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), worse);
    }
}

SnrValue db_to_linear(SnrValue v) {
    if (v.domain == SnrDomain::Linear) return v;
    return {std::pow(10.0, v.magnitude / 10.0), SnrDomain::Linear};
}

SnrValue linear_to_db(SnrValue v) {
    if (v.domain == SnrDomain::Decibel) return v;
    if (!(v.magnitude > 0.0))
        throw std::invalid_argument("linear_to_db: magnitude must be > 0");
    return {10.0 * std::log10(v.magnitude), SnrDomain::Decibel};
}

}  // namespace fadeber
