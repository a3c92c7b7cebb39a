#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fadeber/gaussfit.hpp"
#include "fadeber/modulation.hpp"

namespace fadeber {

/// Published reference coefficients of the bell approximation for the four
/// benchmark schemes, together with the goodness-of-fit figures reported
/// alongside them. Used by the `reproduce` command for side-by-side deltas.
struct ReferenceFit {
    std::string scheme_name;
    ModulationScheme scheme;
    GaussianFit fit;  // dB-domain coefficients
    double sse;
    double r2;
    double adj_r2;
    double rmse;
};

const std::vector<ReferenceFit>& reference_fits();

/// Lookup by scheme identity (QPSK, 16-QAM, 2-FSK, 2-ASK); nullopt otherwise.
std::optional<ReferenceFit> reference_fit_for(const ModulationScheme& s);

}  // namespace fadeber
