#include "fadeber/montecarlo.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fadeber {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;
constexpr std::int64_t kBlockSize = 1 << 16;
constexpr std::int64_t kMinSamples = 1000;

struct BlockMoments {
    double sum = 0.0;
    double sum_sq = 0.0;
};

void validate(const McConfig& cfg) {
    if (cfg.n_samples < kMinSamples)
        throw std::invalid_argument("McConfig: n_samples must be >= 1000");
}

McEstimate reduce(const std::vector<BlockMoments>& blocks, std::int64_t n) {
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const BlockMoments& b : blocks) {
        sum += b.sum;
        sum_sq += b.sum_sq;
    }
    const double mean = sum / double(n);
    double variance = 0.0;
    if (n > 1) {
        variance = (sum_sq - double(n) * mean * mean) / double(n - 1);
        variance = std::max(variance, 0.0);
    }
    return {mean, std::sqrt(variance / double(n)), n};
}

// Shared block driver: the kernel fills the moments of one sample block
// from its own substream. Parallel and serial paths run the identical
// per-block work; the reduction is always in block order, so the result
// does not depend on the thread count.
template <typename Kernel>
McEstimate run_blocks(const McConfig& cfg, bool parallel, Kernel&& kernel) {
    validate(cfg);
    const std::int64_t n = cfg.n_samples;
    const std::int64_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
    std::vector<BlockMoments> blocks(static_cast<std::size_t>(n_blocks));

    auto run_one = [&](std::int64_t block) {
        const std::int64_t begin = block * kBlockSize;
        const std::int64_t count = std::min(kBlockSize, n - begin);
        McRng rng(substream_seed(cfg.seed, std::uint64_t(block)));
        blocks[std::size_t(block)] = kernel(rng, count);
    };

    if (parallel) {
#ifdef _OPENMP
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
#pragma omp parallel for schedule(static)
#endif
        for (std::int64_t block = 0; block < n_blocks; ++block) run_one(block);
    } else {
        for (std::int64_t block = 0; block < n_blocks; ++block) run_one(block);
    }
    return reduce(blocks, n);
}

BlockMoments semi_analytic_block(McRng& rng, std::int64_t count,
                                 const std::function<double(double)>& ber_fn,
                                 double ebn0_linear) {
    BlockMoments m;
    for (std::int64_t i = 0; i < count; ++i) {
        const ChannelSample h = draw_channel(rng);
        const double p = ber_fn(h.power() * ebn0_linear);
        m.sum += p;
        m.sum_sq += p * p;
    }
    return m;
}

BlockMoments bitlevel_qpsk_block(McRng& rng, std::int64_t count,
                                 double ebn0_linear) {
    // Unit-energy Gray QPSK symbol carries 2 bits, so Eb = 1/2 and the
    // per-dimension noise deviation is sqrt(N0/2) = 1/(2 sqrt(Eb/N0)).
    const double amp = 1.0 / std::sqrt(2.0);
    const double sigma = 1.0 / (2.0 * std::sqrt(ebn0_linear));
    BlockMoments m;
    for (std::int64_t i = 0; i < count; ++i) {
        const std::uint64_t word = rng.bits();
        const int bit_i = int(word & 1u);
        const int bit_q = int((word >> 1) & 1u);
        const double s_re = bit_i ? -amp : amp;
        const double s_im = bit_q ? -amp : amp;

        const ChannelSample h = draw_channel(rng);
        const double n_re = sigma * rng.normal();
        const double n_im = sigma * rng.normal();
        const double y_re = h.h_re * s_re - h.h_im * s_im + n_re;
        const double y_im = h.h_re * s_im + h.h_im * s_re + n_im;

        // Coherent equalization by the known channel: y / h.
        const double hp = h.power();
        const double z_re = (y_re * h.h_re + y_im * h.h_im) / hp;
        const double z_im = (y_im * h.h_re - y_re * h.h_im) / hp;

        const int dec_i = z_re < 0.0 ? 1 : 0;
        const int dec_q = z_im < 0.0 ? 1 : 0;
        const double frac = 0.5 * double((dec_i != bit_i) + (dec_q != bit_q));
        m.sum += frac;
        m.sum_sq += frac * frac;
    }
    return m;
}

}  // namespace

double McRng::uniform() {
    const std::uint64_t r = engine_() >> 11;
    double u = double(r) * 0x1.0p-53;
    if (u == 0.0) u = 0x1.0p-53;
    return u;
}

double McRng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    spare_ = r * std::sin(kTwoPi * u2);
    has_spare_ = true;
    return r * std::cos(kTwoPi * u2);
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t block) {
    // splitmix64 finalizer over (seed, block).
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (block + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

ChannelSample draw_channel(McRng& rng) {
    const double scale = 1.0 / std::sqrt(2.0);  // per-component variance 1/2
    return {scale * rng.normal(), scale * rng.normal()};
}

McEstimate semi_analytic_ber(const std::function<double(double)>& ber_fn,
                             double ebn0_linear, const McConfig& cfg) {
    if (!(ebn0_linear > 0.0))
        throw std::invalid_argument("semi_analytic_ber: ebn0 must be > 0");
    return run_blocks(cfg, true, [&](McRng& rng, std::int64_t count) {
        return semi_analytic_block(rng, count, ber_fn, ebn0_linear);
    });
}

McEstimate semi_analytic_ber_serial(const std::function<double(double)>& ber_fn,
                                    double ebn0_linear, const McConfig& cfg) {
    if (!(ebn0_linear > 0.0))
        throw std::invalid_argument("semi_analytic_ber: ebn0 must be > 0");
    return run_blocks(cfg, false, [&](McRng& rng, std::int64_t count) {
        return semi_analytic_block(rng, count, ber_fn, ebn0_linear);
    });
}

McEstimate bitlevel_qpsk_ber(double ebn0_linear, const McConfig& cfg) {
    if (!(ebn0_linear > 0.0))
        throw std::invalid_argument("bitlevel_qpsk_ber: ebn0 must be > 0");
    if (cfg.mode != McMode::BitLevel)
        throw std::invalid_argument("bitlevel_qpsk_ber: cfg.mode must be BitLevel");
    return run_blocks(cfg, true, [&](McRng& rng, std::int64_t count) {
        return bitlevel_qpsk_block(rng, count, ebn0_linear);
    });
}

McEstimate bitlevel_qpsk_ber_serial(double ebn0_linear, const McConfig& cfg) {
    if (!(ebn0_linear > 0.0))
        throw std::invalid_argument("bitlevel_qpsk_ber: ebn0 must be > 0");
    if (cfg.mode != McMode::BitLevel)
        throw std::invalid_argument("bitlevel_qpsk_ber: cfg.mode must be BitLevel");
    return run_blocks(cfg, false, [&](McRng& rng, std::int64_t count) {
        return bitlevel_qpsk_block(rng, count, ebn0_linear);
    });
}

}  // namespace fadeber
