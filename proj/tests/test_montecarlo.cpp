#include <doctest.h>

#include <cmath>
#include <vector>

#include "fadeber/fading.hpp"
#include "fadeber/modulation.hpp"
#include "fadeber/montecarlo.hpp"
#include "fadeber/reference.hpp"

using namespace fadeber;

namespace {

double qpsk_awgn(double xi) {
    return awgn_ber(ModulationScheme::qpsk(), {xi, SnrDomain::Linear});
}

}  // namespace

TEST_CASE("draw_channel determinism and statistics") {
    McRng rng_a(42);
    McRng rng_b(42);
    const ChannelSample first_a = draw_channel(rng_a);
    const ChannelSample first_b = draw_channel(rng_b);
    CHECK(first_a.h_re == first_b.h_re);
    CHECK(first_a.h_im == first_b.h_im);

    const int n = 1000000;
    McRng rng(7);
    double sum = 0.0, sum_sq = 0.0;
    std::vector<double> mags;
    mags.reserve(n);
    for (int i = 0; i < n; ++i) {
        const ChannelSample h = draw_channel(rng);
        const double p = h.power();
        sum += p;
        sum_sq += p * p;
        mags.push_back(std::sqrt(p));
    }
    const double mean = sum / n;
    const double sd = std::sqrt((sum_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 1.0) < 4.0 * sd);

    // Coarse Rayleigh CDF check at the deciles: F(r) = 1 - exp(-r^2).
    for (int d = 1; d <= 9; ++d) {
        const double q = d / 10.0;
        const double r_q = std::sqrt(-std::log(1.0 - q));
        int below = 0;
        for (double m : mags) below += (m <= r_q);
        CHECK(std::abs(double(below) / n - q) <= 0.005);
    }
}

TEST_CASE("semi-analytic estimator") {
    McConfig cfg{123, 100000, McMode::SemiAnalytic, 0};

    SUBCASE("constant function is exact") {
        const McEstimate est = semi_analytic_ber([](double) { return 0.25; }, 5.0, cfg);
        CHECK(est.mean == 0.25);
        CHECK(est.std_error == 0.0);
        CHECK(est.n == cfg.n_samples);
    }

    SUBCASE("QPSK at gamma = 10 agrees with the closed form") {
        McConfig big{123, 1000000, McMode::SemiAnalytic, 0};
        const McEstimate est = semi_analytic_ber(qpsk_awgn, 10.0, big);
        CHECK(std::abs(est.mean - 0.0232687) <= 3.0 * est.std_error);
    }

    SUBCASE("fitted-model average agrees with the closed form") {
        const GaussianFit fit = reference_fit_for(ModulationScheme::qpsk())->fit;
        McConfig big{321, 1000000, McMode::SemiAnalytic, 0};
        const McEstimate est = semi_analytic_ber(
            [&](double xi) { return gaussian_model(fit.a, fit.b, fit.c, xi); }, 10.0,
            big);
        CHECK(std::abs(est.mean - generalized_fading_ber(fit, 10.0)) <=
              3.0 * est.std_error);
    }

    SUBCASE("sample count below the minimum is rejected") {
        McConfig bad{1, 999, McMode::SemiAnalytic, 0};
        CHECK_THROWS_AS(semi_analytic_ber(qpsk_awgn, 10.0, bad), std::invalid_argument);
    }
}

TEST_CASE("determinism across runs and worker counts") {
    McConfig cfg{987, 300000, McMode::SemiAnalytic, 0};
    const McEstimate a = semi_analytic_ber(qpsk_awgn, 10.0, cfg);
    const McEstimate b = semi_analytic_ber(qpsk_awgn, 10.0, cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);

    const McEstimate serial = semi_analytic_ber_serial(qpsk_awgn, 10.0, cfg);
    CHECK(a.mean == serial.mean);
    CHECK(a.std_error == serial.std_error);

    McConfig one = cfg;
    one.threads = 1;
    McConfig four = cfg;
    four.threads = 4;
    const McEstimate e1 = semi_analytic_ber(qpsk_awgn, 10.0, one);
    const McEstimate e4 = semi_analytic_ber(qpsk_awgn, 10.0, four);
    CHECK(e1.mean == e4.mean);
    CHECK(e1.std_error == e4.std_error);
}

TEST_CASE("bit-level QPSK") {
    SUBCASE("vanishing error rate at very high SNR") {
        McConfig cfg{55, 100000, McMode::BitLevel, 0};
        const McEstimate est = bitlevel_qpsk_ber(1e6, cfg);
        CHECK(est.mean <= 1e-4);
    }

    SUBCASE("gamma = 10 agrees with the closed form") {
        McConfig cfg{77, 1000000, McMode::BitLevel, 0};
        const McEstimate est = bitlevel_qpsk_ber(10.0, cfg);
        CHECK(std::abs(est.mean - 0.0232687) <= 3.0 * est.std_error);
    }

    SUBCASE("identical seeds give identical error counts") {
        McConfig cfg{31, 200000, McMode::BitLevel, 0};
        const McEstimate a = bitlevel_qpsk_ber(10.0, cfg);
        const McEstimate b = bitlevel_qpsk_ber(10.0, cfg);
        const McEstimate s = bitlevel_qpsk_ber_serial(10.0, cfg);
        CHECK(a.mean == b.mean);
        CHECK(a.mean == s.mean);
        CHECK(a.std_error == s.std_error);
    }

    SUBCASE("mode mismatch is rejected") {
        McConfig cfg{31, 200000, McMode::SemiAnalytic, 0};
        CHECK_THROWS_AS(bitlevel_qpsk_ber(10.0, cfg), std::invalid_argument);
    }
}

TEST_CASE("semi-analytic and bit-level agree with the closed form") {
    for (double gamma : {1.0, 10.0, 100.0}) {
        McConfig cfg{2024, 400000, McMode::SemiAnalytic, 0};
        const McEstimate sa = semi_analytic_ber(qpsk_awgn, gamma, cfg);
        cfg.mode = McMode::BitLevel;
        const McEstimate bl = bitlevel_qpsk_ber(gamma, cfg);
        const double exact = exact_fading_ber(ModulationScheme::qpsk(), gamma);
        CHECK(std::abs(sa.mean - exact) <= 3.0 * sa.std_error);
        CHECK(std::abs(bl.mean - exact) <= 3.0 * bl.std_error);
        const double combined =
            std::sqrt(sa.std_error * sa.std_error + bl.std_error * bl.std_error);
        CHECK(std::abs(sa.mean - bl.mean) <= 3.0 * combined);
    }
}

TEST_CASE("standard error scales as 1/sqrt(n)") {
    McConfig small{5, 10000, McMode::SemiAnalytic, 0};
    McConfig large{5, 1000000, McMode::SemiAnalytic, 0};
    const McEstimate a = semi_analytic_ber(qpsk_awgn, 10.0, small);
    const McEstimate b = semi_analytic_ber(qpsk_awgn, 10.0, large);
    const double ratio = a.std_error / b.std_error;
    CHECK(ratio > 10.0 * 0.8);
    CHECK(ratio < 10.0 * 1.2);
}
