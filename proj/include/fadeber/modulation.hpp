#pragma once

#include <string>
#include <vector>

#include "fadeber/numerics.hpp"

namespace fadeber {

enum class SchemeKind { Qpsk, Qam, Fsk, Ask };

/// Scheme identity with constellation order M. QPSK carries no order.
/// M must be a power of two (>= 2); QAM additionally a perfect square.
struct ModulationScheme {
    SchemeKind kind;
    int order;

    static ModulationScheme qpsk();
    static ModulationScheme qam(int m);
    static ModulationScheme fsk(int m);
    static ModulationScheme ask(int m);

    std::string name() const;
};

/// Parses "qpsk", "<M>qam", "<M>fsk", "<M>ask" plus the aliases
/// "bfsk" (2-FSK) and "bask" (2-ASK). Throws std::invalid_argument.
ModulationScheme parse_scheme(const std::string& text);

/// alpha1 = (sqrt(M)-1)/sqrt(M), beta1 = 3/(M-1)  (QAM)
/// alpha2 = 2(M-1)/(M log2 M),   beta2 = 6 log2 M/(M^2-1)  (ASK)
struct SchemeConstants {
    double alpha1 = 0.0;
    double beta1 = 0.0;
    double alpha2 = 0.0;
    double beta2 = 0.0;
};

SchemeConstants scheme_constants(const ModulationScheme& s);

/// AWGN bit error probability at energy-per-bit SNR xi (linear):
///   QPSK:   Q(sqrt(2 xi))
///   ASK(M): alpha2 * Q(sqrt(beta2 xi))
///   FSK(M): (M/2) * Q(sqrt(log2(M) xi))
///   QAM(M): (4/log2 M) * [alpha1 Q(sqrt(beta1 xi)) - alpha1^2 Q^2(sqrt(beta1 xi))]
/// Rejects negative linear SNR.
double awgn_ber(const ModulationScheme& s, SnrValue ebn0);

/// Ordered (SNR, BER) samples sharing one SNR domain.
struct BerCurve {
    SnrDomain domain = SnrDomain::Decibel;
    std::vector<double> snr;
    std::vector<double> ber;

    std::size_t size() const { return snr.size(); }
};

/// Evenly spaced grid from start to stop (inclusive) in the start domain;
/// BERs from awgn_ber. Requires start < stop, step > 0, >= 4 points.
BerCurve ber_curve(const ModulationScheme& s, SnrValue start, SnrValue stop,
                   double step);

}  // namespace fadeber
