#include "fadeber/reference.hpp"

namespace fadeber {

const std::vector<ReferenceFit>& reference_fits() {
    static const std::vector<ReferenceFit> table = {
        {"QPSK", ModulationScheme::qpsk(),
         {0.1059, -2.405, 4.344, SnrDomain::Decibel},
         2.093e-6, 0.9998, 0.9998, 2.734e-4},
        {"16-QAM", ModulationScheme::qam(16),
         {0.1793, 0.3892, 8.667, SnrDomain::Decibel},
         3.416e-4, 0.9978, 0.9978, 2.668e-3},
        {"BFSK", ModulationScheme::fsk(2),
         {0.2036, -3.056, 6.159, SnrDomain::Decibel},
         2.169e-5, 0.9996, 0.9996, 6.722e-4},
        {"BASK", ModulationScheme::ask(2),
         {0.1059, -2.405, 4.344, SnrDomain::Decibel},
         2.093e-6, 0.9998, 0.9998, 2.088e-4},
    };
    return table;
}

std::optional<ReferenceFit> reference_fit_for(const ModulationScheme& s) {
    for (const ReferenceFit& ref : reference_fits()) {
        if (ref.scheme.kind == s.kind && ref.scheme.order == s.order) return ref;
    }
    return std::nullopt;
}

}  // namespace fadeber
