#include "fadeber/modulation.hpp"

#include <cmath>
#include <stdexcept>

namespace fadeber {

namespace {

bool is_power_of_two(int m) { return m >= 2 && (m & (m - 1)) == 0; }

bool is_perfect_square(int m) {
    const int r = static_cast<int>(std::lround(std::sqrt(double(m))));
    return r * r == m;
}

double log2d(int m) { return std::log2(double(m)); }

}  // namespace

ModulationScheme ModulationScheme::qpsk() { return {SchemeKind::Qpsk, 4}; }

ModulationScheme ModulationScheme::qam(int m) {
    if (!is_power_of_two(m) || !is_perfect_square(m))
        throw std::invalid_argument("QAM order must be a power-of-two perfect square");
    return {SchemeKind::Qam, m};
}

ModulationScheme ModulationScheme::fsk(int m) {
    if (!is_power_of_two(m))
        throw std::invalid_argument("FSK order must be a power of two >= 2");
    return {SchemeKind::Fsk, m};
}

ModulationScheme ModulationScheme::ask(int m) {
    if (!is_power_of_two(m))
        throw std::invalid_argument("ASK order must be a power of two >= 2");
    return {SchemeKind::Ask, m};
}

std::string ModulationScheme::name() const {
    switch (kind) {
        case SchemeKind::Qpsk: return "qpsk";
        case SchemeKind::Qam: return std::to_string(order) + "qam";
        case SchemeKind::Fsk: return std::to_string(order) + "fsk";
        case SchemeKind::Ask: return std::to_string(order) + "ask";
    }
    return "?";
}

ModulationScheme parse_scheme(const std::string& text) {
    if (text == "qpsk") return ModulationScheme::qpsk();
    if (text == "bfsk") return ModulationScheme::fsk(2);
    if (text == "bask") return ModulationScheme::ask(2);
    const auto tail = text.size() > 3 ? text.substr(text.size() - 3) : "";
    if (tail == "qam" || tail == "fsk" || tail == "ask") {
        int m = 0;
        try {
            m = std::stoi(text.substr(0, text.size() - 3));
        } catch (const std::exception&) {
            throw std::invalid_argument("unknown scheme: " + text);
        }
        if (tail == "qam") return ModulationScheme::qam(m);
        if (tail == "fsk") return ModulationScheme::fsk(m);
        return ModulationScheme::ask(m);
    }
    throw std::invalid_argument("unknown scheme: " + text);
}

SchemeConstants scheme_constants(const ModulationScheme& s) {
    SchemeConstants k;
    const double m = s.order;
    switch (s.kind) {
        case SchemeKind::Qpsk:
            break;
        case SchemeKind::Qam: {
            const double sqrt_m = std::sqrt(m);
            k.alpha1 = (sqrt_m - 1.0) / sqrt_m;
            k.beta1 = 3.0 / (m - 1.0);
            break;
        }
        case SchemeKind::Fsk:
            break;
        case SchemeKind::Ask:
            k.alpha2 = 2.0 * (m - 1.0) / (m * log2d(s.order));
            k.beta2 = 6.0 * log2d(s.order) / (m * m - 1.0);
            break;
    }
    return k;
}

double awgn_ber(const ModulationScheme& s, SnrValue ebn0) {
    const double xi = db_to_linear(ebn0).magnitude;
    if (!(xi >= 0.0)) throw std::invalid_argument("awgn_ber: negative linear SNR");
    const SchemeConstants k = scheme_constants(s);
    switch (s.kind) {
        case SchemeKind::Qpsk:
            return q_function(std::sqrt(2.0 * xi));
        case SchemeKind::Ask:
            return k.alpha2 * q_function(std::sqrt(k.beta2 * xi));
        case SchemeKind::Fsk:
            return 0.5 * s.order * q_function(std::sqrt(log2d(s.order) * xi));
        case SchemeKind::Qam: {
            const double q = q_function(std::sqrt(k.beta1 * xi));
            return 4.0 / log2d(s.order) * (k.alpha1 * q - k.alpha1 * k.alpha1 * q * q);
        }
    }
    throw std::logic_error("awgn_ber: unreachable");
}

BerCurve ber_curve(const ModulationScheme& s, SnrValue start, SnrValue stop,
                   double step) {
    if (start.domain != stop.domain)
        throw std::invalid_argument("ber_curve: mixed grid domains");
    if (!(start.magnitude < stop.magnitude))
        throw std::invalid_argument("ber_curve: need start < stop");
    if (!(step > 0.0)) throw std::invalid_argument("ber_curve: need step > 0");
    const double ratio = (stop.magnitude - start.magnitude) / step;
    // Tolerate roundoff so 0:10:0.1 yields 101 points, not 100.
    const auto n = static_cast<std::size_t>(std::floor(ratio + 1e-9 * (ratio + 1.0))) + 1;
    if (n < 4) throw std::invalid_argument("ber_curve: need at least 4 grid points");

    BerCurve curve;
    curve.domain = start.domain;
    curve.snr.reserve(n);
    curve.ber.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = start.magnitude + double(i) * step;
        curve.snr.push_back(x);
        curve.ber.push_back(awgn_ber(s, {x, start.domain}));
    }
    return curve;
}

}  // namespace fadeber
