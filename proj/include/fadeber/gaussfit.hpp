#pragma once

#include <optional>
#include <utility>

#include "fadeber/modulation.hpp"

namespace fadeber {

/// Parameters of the bell model a * exp(-((x - b)/c)^2) together with the
/// SNR domain the fit was performed in. c is stored positive (the model is
/// even in c).
struct GaussianFit {
    double a = 0.0;
    double b = 0.0;
    double c = 1.0;
    SnrDomain domain = SnrDomain::Decibel;
};

struct FitReport {
    double sse = 0.0;
    double r2 = 0.0;
    double adj_r2 = 0.0;
    double rmse = 0.0;
    int iterations = 0;
    bool converged = false;
};

struct FitOptions {
    int max_iter = 200;
    double sse_rel_tol = 1e-12;
};

/// Raw model evaluation; no domain bookkeeping.
double gaussian_model(double a, double b, double c, double x);

/// Model evaluation with domain check: x must carry the fit's domain.
double gaussian_eval(const GaussianFit& fit, SnrValue x);

/// Damped Gauss-Newton (Levenberg-Marquardt) least-squares fit of the bell
/// model to the curve, analytic Jacobian. Without an initial guess, starts
/// from a0 = max y, b0 = argmax x, c0 = half the grid span. Non-convergence
/// returns best-so-far with converged = false.
std::pair<GaussianFit, FitReport> fit_gaussian(
    const BerCurve& curve, std::optional<GaussianFit> init = std::nullopt,
    FitOptions opts = {});

/// SSE, R^2, adjusted R^2 and RMSE of the fit against the curve, with
/// degrees-of-freedom denominators (p = 3 parameters).
FitReport goodness_of_fit(const BerCurve& curve, const GaussianFit& fit);

}  // namespace fadeber
