#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fadeber/gaussfit.hpp"
#include "fadeber/modulation.hpp"

namespace fadeber {

/// Exponential density of the instantaneous SNR under Rayleigh fading:
/// p(xi) = exp(-xi/gamma)/gamma, xi >= 0, gamma the average SNR (linear).
double chi2_pdf(double xi, double gamma);

/// Closed-form Rayleigh average of the fitted bell model, evaluated in the
/// overflow-safe form
///   P = (a c sqrt(pi) / (2 gamma)) * exp(-b^2/c^2) * erfcx(c/(2 gamma) - b/c),
/// finite for all gamma > 0 including gamma -> 0+.
double generalized_fading_ber(const GaussianFit& fit, double gamma);

/// Quadrature average int_0^inf ber_fn(xi) p(xi) dxi, truncated at
/// U = gamma * ln(1e16) (tail below 1e-16 * sup ber_fn).
double average_over_rayleigh(const std::function<double(double)>& ber_fn,
                             double gamma, double rel_tol);

/// E[Q(sqrt(beta xi))] = (1 - sqrt(beta gamma / (beta gamma + 2))) / 2.
double rayleigh_q_average(double beta, double gamma);

/// E[Q^2(sqrt(beta xi))] = 1/4 - (mu/pi) arctan(1/mu),
/// mu = sqrt(beta gamma / (beta gamma + 2)).
double rayleigh_q2_average(double beta, double gamma);

/// Literal per-scheme closed forms for the Rayleigh average BER:
///   QPSK:   (1 - sqrt(gamma/(gamma+1))) / 2
///   QAM(M): K1 + K2 sqrt(beta1 gamma/(beta1 gamma + 2))
///   FSK(M): (M/2) (1 - sqrt(gamma log2 M/(gamma log2 M + 2)))
///   ASK(M): (alpha2/2) (1 - sqrt(beta2 gamma/(beta2 gamma + 2)))
/// Note the FSK form is exactly twice the Rayleigh average of this
/// library's FSK AWGN curve; both quantities are exposed, see tests.
double exact_fading_ber(const ModulationScheme& s, double gamma);

struct ComparisonRow {
    double ebn0_db = 0.0;
    double ber_generalized = 0.0;
    double ber_exact = 0.0;
    double ber_quadrature = 0.0;
    double ratio = 0.0;  // ber_generalized / ber_exact
};

/// Per-grid-point comparison of the three estimators, gamma = linear
/// E_b/N_0 (unit mean-square channel gain). The fit constants act on
/// linear xi inside the average even when fitted in dB; the resulting
/// systematic offset shows up in the ratio column. Rows are independent
/// and computed in parallel with deterministic order.
std::vector<ComparisonRow> compare_curves(const ModulationScheme& s,
                                          const GaussianFit& fit,
                                          std::span<const double> ebn0_db_grid);

}  // namespace fadeber
