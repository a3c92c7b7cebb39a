#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace fadeber {

enum class SnrDomain { Decibel, Linear };

/// An SNR magnitude tagged with the domain it lives in. All internal math
/// runs on linear values; decibels appear only at interfaces.
struct SnrValue {
    double magnitude = 0.0;
    SnrDomain domain = SnrDomain::Decibel;
};

SnrValue db_to_linear(SnrValue v);
SnrValue linear_to_db(SnrValue v);

/// Error function, complement and scaled complement, implemented from
/// scratch (Maclaurin series for small arguments, Lentz continued fraction
/// for the tail). erf is accurate to ~1e-15 absolute, erfc to ~1e-13
/// relative on [-6, 30], erfcx to ~1e-12 relative for x >= 0.
double erf(double x);
double erfc(double x);
double erfcx(double x);

/// Gaussian tail probability Q(x) = erfc(x / sqrt(2)) / 2.
double q_function(double x);

/// Q(x) evaluated through the finite-interval integral
/// (1/pi) * int_0^{pi/2} exp(-x^2 / (2 sin^2 t)) dt, x >= 0.
/// The integrand limit at t = 0 is taken as 0 for x > 0.
double q_craig(double x, double abs_tol);

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::int64_t evaluations = 0;
};

/// Thrown when the subdivision budget runs out before the requested
/// tolerance is met; carries the best estimate accumulated so far.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}
    const QuadratureResult& best_estimate() const noexcept { return best_; }

private:
    QuadratureResult best_;
};

/// Adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
/// Bisects until the per-interval error estimate meets the tolerance
/// budget max(abs_tol, rel_tol * |I|) distributed by interval width.
/// Deterministic for a given integrand and tolerances.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    double abs_tol, double rel_tol,
                                    std::int64_t max_evaluations = 1000000);

}  // namespace fadeber
