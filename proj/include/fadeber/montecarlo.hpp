#pragma once

#include <cstdint>
#include <functional>
#include <random>

#include "fadeber/numerics.hpp"

namespace fadeber {

enum class McMode { SemiAnalytic, BitLevel };

/// (seed, n_samples, mode) fully determine the estimate bit-for-bit,
/// regardless of thread count. threads = 0 picks the runtime default.
struct McConfig {
    std::uint64_t seed = 0;
    std::int64_t n_samples = 0;
    McMode mode = McMode::SemiAnalytic;
    int threads = 0;
};

struct ChannelSample {
    double h_re = 0.0;
    double h_im = 0.0;

    double power() const { return h_re * h_re + h_im * h_im; }
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n = 0;
};

/// Deterministic generator: std::mt19937_64 (bit-exact per the standard)
/// with a hand-rolled Box-Muller transform, so streams reproduce across
/// platforms. Substreams for parallel blocks are derived from
/// (seed, block index) via a splitmix64 mix.
class McRng {
public:
    explicit McRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on (0, 1].
    double uniform();
    /// Standard normal via Box-Muller; one spare value is cached.
    double normal();
    std::uint64_t bits() { return engine_(); }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t block);

/// One Rayleigh channel draw: independent N(0, 1/2) real and imaginary
/// parts, so E|h|^2 = 1.
ChannelSample draw_channel(McRng& rng);

/// Mean of ber_fn over sampled instantaneous SNR xi = |h|^2 * ebn0.
McEstimate semi_analytic_ber(const std::function<double(double)>& ber_fn,
                             double ebn0_linear, const McConfig& cfg);
/// Single-threaded reference path; bit-identical to the parallel one.
McEstimate semi_analytic_ber_serial(const std::function<double(double)>& ber_fn,
                                    double ebn0_linear, const McConfig& cfg);

/// Gray-mapped QPSK over the fading channel: transmit, fade, add complex
/// AWGN with per-dimension variance N0/2, equalize by the known h, decide.
/// Two bits per symbol; mean is the bit error fraction.
McEstimate bitlevel_qpsk_ber(double ebn0_linear, const McConfig& cfg);
McEstimate bitlevel_qpsk_ber_serial(double ebn0_linear, const McConfig& cfg);

}  // namespace fadeber
